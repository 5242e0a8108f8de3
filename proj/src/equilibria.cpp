#include "dampedwave/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dampedwave/diagnostics.hpp"
#include "dampedwave/rates.hpp"

namespace dampedwave {

Field bump_guess(const Grid1D& g, double amplitude) {
  const double L = g.half_length();
  return sample(g, [&](double x) { return amplitude * std::sin(std::numbers::pi * (x + L) / (2.0 * L)); });
}

EquilibriumResult solve_equilibrium(const Field& guess, const Nonlinearity& nl, const Grid1D& g,
                                    const NewtonOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("Newton tolerance must be positive");
  require_on_grid(guess, g);

  EquilibriumResult res;
  Field v = guess;
  Field phi = G_residual(v, nl, g);
  double r = hm1_norm(phi, g);
  res.residual_history.push_back(r);

  int it = 0;
  while (r > opts.tol && it < opts.max_iter) {
    std::vector<double> shift(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) shift[i] = nl.df(v[i]);
    std::vector<double> rhs(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rhs[i] = -phi[i];

    std::vector<double> delta;
    try {
      delta = solve_tridiagonal(shifted_stiffness(g, shift), rhs);
    } catch (const std::domain_error&) {
      throw SingularJacobian("Newton Jacobian is singular at iteration " + std::to_string(it));
    }

    double lambda = 1.0;
    Field trial;
    Field trial_phi;
    double trial_r = r;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h, lambda *= 0.5) {
      trial = v;
      for (std::size_t i = 0; i < v.size(); ++i) trial[i] += lambda * delta[i];
      trial_phi = G_residual(trial, nl, g);
      trial_r = hm1_norm(trial_phi, g);
      if (std::isfinite(trial_r) && trial_r < r) {
        accepted = true;
        break;
      }
    }
    ++it;
    if (!accepted) break;  // stagnated at round-off level; keep best iterate
    v = std::move(trial);
    phi = std::move(trial_phi);
    r = trial_r;
    res.residual_history.push_back(r);
  }

  // Residual re-verified from scratch rather than taken from the loop.
  res.residual_hm1 = hm1_norm(G_residual(v, nl, g), g);
  res.converged = res.residual_hm1 <= opts.tol;
  res.iterations = it;
  res.e0 = stationary_energy(v, nl, g);
  res.psi = std::move(v);
  return res;
}

std::vector<double> default_probe_epsilons() {
  std::vector<double> eps(12);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    eps[i] = 1e-3 * std::pow(100.0, static_cast<double>(i) / 11.0);
  }
  return eps;
}

Field normalize_h1(const Field& phi, const Grid1D& g) {
  const double n = h1_seminorm(phi, g);
  if (!(n > 0.0)) throw std::invalid_argument("probe direction has zero H^1 seminorm");
  return (1.0 / n) * phi;
}

LojasiewiczProbe lojasiewicz_probe(const EquilibriumResult& eq, const Nonlinearity& nl,
                                   const Grid1D& g, const std::vector<Field>& directions,
                                   const std::vector<double>& epsilons) {
  if (!eq.converged) throw std::invalid_argument("probe needs a converged equilibrium");
  if (epsilons.size() < 6) throw std::invalid_argument("probe needs at least 6 amplitudes");
  for (double e : epsilons) {
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("probe amplitudes must lie in (0, 1]");
  }
  if (directions.empty()) throw std::invalid_argument("probe needs at least one direction");

  const double e0 = stationary_energy(eq.psi, nl, g);
  std::vector<std::vector<double>> xs, ys;
  std::size_t total = 0;
  LojasiewiczProbe probe;
  for (const Field& dir : directions) {
    const Field phi = normalize_h1(dir, g);
    std::vector<double> x, y;
    for (double eps : epsilons) {
      const Field v = eq.psi + eps * phi;
      const double gap = std::abs(stationary_energy(v, nl, g) - e0);
      if (gap <= 1e-13) continue;
      const double res = hm1_norm(G_residual(v, nl, g), g);
      if (!(res > 0.0)) continue;
      x.push_back(std::log(gap));
      y.push_back(std::log(res));
    }
    DirectionSlope ds;
    ds.samples = x.size();
    if (x.size() >= 2) {
      const LineFit fit = fit_line(x, y);
      ds.slope = fit.slope;
      ds.r_squared = fit.r_squared;
    }
    probe.per_direction.push_back(ds);
    total += x.size();
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  if (total < 4) throw DegenerateSamples("fewer than 4 admissible probe samples");

  const LineFit pooled = fit_common_slope(xs, ys);
  probe.slope = pooled.slope;
  probe.r_squared = pooled.r_squared;
  probe.epsilon_range = {*std::min_element(epsilons.begin(), epsilons.end()),
                         *std::max_element(epsilons.begin(), epsilons.end())};
  probe.direction_count = directions.size();
  return probe;
}

}  // namespace dampedwave
