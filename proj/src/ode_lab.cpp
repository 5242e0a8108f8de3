#include "dampedwave/ode_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dampedwave/diagnostics.hpp"
#include "dampedwave/integrator.hpp"

namespace dampedwave {

std::vector<ModeSample> integrate_mode(const ModeODE& m) {
  if (!(m.mu > 0.0)) throw std::invalid_argument("mode eigenvalue mu must be positive");
  if (!(m.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(m.t_final > 0.0)) throw std::invalid_argument("t_final must be positive");

  const std::size_t n = static_cast<std::size_t>(std::llround(m.t_final / m.dt));
  const double dt = m.dt;
  const auto& h = m.damping;
  auto accel = [&](double t, double w, double v) { return -h(t) * v - m.mu * w; };

  std::vector<ModeSample> out;
  out.reserve(n + 1);
  double w = m.omega0, v = m.omega0_dot;
  auto push = [&](double t) { out.push_back({t, w, v, 0.5 * v * v + 0.5 * m.mu * w * w}); };
  push(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double k1w = v, k1v = accel(t, w, v);
    const double k2w = v + 0.5 * dt * k1v, k2v = accel(t + 0.5 * dt, w + 0.5 * dt * k1w, k2w);
    const double k3w = v + 0.5 * dt * k2v, k3v = accel(t + 0.5 * dt, w + 0.5 * dt * k2w, k3w);
    const double k4w = v + dt * k3v, k4v = accel(t + dt, w + dt * k3w, k4w);
    w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(w) || !std::isfinite(v) || std::abs(w) > kBlowUpThreshold) {
      throw BlowUp("mode ODE blew up after t = " + std::to_string(t), t);
    }
    push(static_cast<double>(i + 1) * dt);
  }
  return out;
}

Damping remark_two_damping(double mu, double alpha) { return RemarkTwoDamping{mu, alpha}; }

double ExplicitMode::w(double t) const {
  return 1.0 - mu / (1.0 + alpha) * std::pow(t + 1.0, 1.0 + alpha);
}
double ExplicitMode::w_dot(double t) const { return -mu * std::pow(t + 1.0, alpha); }
double ExplicitMode::w_ddot(double t) const { return -mu * alpha * std::pow(t + 1.0, alpha - 1.0); }

ExplicitSolutionReport explicit_solution_check(double mu, double alpha, const Grid1D& g,
                                               std::size_t mode_index,
                                               std::vector<double> sample_times) {
  if (mode_index < 1 || mode_index > g.size()) {
    throw std::out_of_range("mode index outside 1..n_interior");
  }
  const Damping h = remark_two_damping(mu, alpha);
  const ExplicitMode sol{mu, alpha};
  if (sample_times.empty()) {
    for (int i = 0; i < 50; ++i) sample_times.push_back(100.0 * i / 49.0);
  }

  ExplicitSolutionReport rep;
  rep.mu = mu;
  rep.alpha = alpha;
  rep.mode_index = mode_index;
  const double lambda_k = mode_eigenvalue(g, mode_index);
  rep.b = mu - lambda_k;
  rep.w0 = sol.w(0.0);
  rep.w0_dot = sol.w_dot(0.0);

  const Nonlinearity mass{LinearMass{rep.b}};
  const Field ek = discrete_mode(g, mode_index);
  const Field lap_ek = laplacian(ek, g);

  for (double t : sample_times) {
    const double w = sol.w(t), wd = sol.w_dot(t), wdd = sol.w_ddot(t);
    const double ht = h(t);
    rep.ode_residual = std::max(rep.ode_residual, std::abs(wdd + ht * wd + mu * w));

    double pde = 0.0;
    for (std::size_t i = 0; i < ek.size(); ++i) {
      const double r = wdd * ek[i] - w * lap_ek[i] + ht * wd * ek[i] + rep.b * w * ek[i];
      pde = std::max(pde, std::abs(r));
    }
    rep.pde_residual = std::max(rep.pde_residual, pde);

    rep.limit_times.push_back(t);
    rep.limit_distance.push_back(std::abs(w - 1.0) * l2_norm(ek, g));
  }

  rep.hm1_G_limit = hm1_norm(G_residual(ek, mass, g), g);
  rep.mu_hm1_mode = mu * hm1_norm(ek, g);
  return rep;
}

}  // namespace dampedwave
