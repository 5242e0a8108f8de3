#include "dampedwave/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace dampedwave {

double stationary_energy(const Field& v, const Nonlinearity& nl, const Grid1D& g) {
  const double grad = h1_seminorm(v, g);
  double pot = 0.0;
  for (double s : v) pot += nl.potential(s);
  return 0.5 * grad * grad + pot * g.dx();
}

double total_energy(const Field& u, const Field& ut, const Nonlinearity& nl, const Grid1D& g) {
  require_on_grid(ut, g);
  const double kin = l2_norm(ut, g);
  return stationary_energy(u, nl, g) + 0.5 * kin * kin;
}

Field G_residual(const Field& v, const Nonlinearity& nl, const Grid1D& g) {
  Field out = laplacian(v, g);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -out[i] + nl.f(v[i]);
  return out;
}

double lyapunov_weight(const Damping& d, double eta, double t) {
  const double alpha = d.exponent().value_or(0.0);
  return eta * std::pow(t + 1.0, -alpha);
}

double lyapunov(const Field& u, const Field& ut, const Nonlinearity& nl, const Damping& d,
                const Grid1D& g, const Field& psi, double eta, double t) {
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in [0, 1)");
  const double cross = hm1_inner(G_residual(u, nl, g), ut, g);
  return total_energy(u, ut, nl, g) - stationary_energy(psi, nl, g) +
         lyapunov_weight(d, eta, t) * cross;
}

DiagnosticsRow make_row(double t, const Field& u, const Field& ut, const Nonlinearity& nl,
                        const Damping& d, const Grid1D& g, const Field* psi, double eta) {
  DiagnosticsRow row;
  row.t = t;
  row.l2_u = l2_norm(u, g);
  row.h1_u = h1_seminorm(u, g);
  row.l2_ut = l2_norm(ut, g);

  const Field G = G_residual(u, nl, g);
  const Field inv_G = inverse_laplacian(G, g);
  row.hm1_G = std::sqrt(std::max(0.0, l2_inner(G, inv_G, g)));

  row.E_0_u = stationary_energy(u, nl, g);
  row.E_u = row.E_0_u + 0.5 * row.l2_ut * row.l2_ut;

  const double e0_psi = psi ? stationary_energy(*psi, nl, g) : 0.0;
  // <G, ut>_{H^-1} = <(-Delta)^{-1} G, ut> by symmetry.
  row.H_lyap = row.E_u - e0_psi + lyapunov_weight(d, eta, t) * l2_inner(inv_G, ut, g);
  if (psi) row.l2_dist_psi = l2_norm(u - *psi, g);
  return row;
}

double dissipation_residual(const DiagnosticsRow& before, const DiagnosticsRow& mid,
                            const DiagnosticsRow& after, const Damping& d) {
  if (!(before.t < mid.t && mid.t < after.t)) {
    throw std::invalid_argument("dissipation residual needs strictly increasing sample times");
  }
  const double dEdt = (after.E_u - before.E_u) / (after.t - before.t);
  return std::abs(dEdt + d(mid.t) * mid.l2_ut * mid.l2_ut);
}

void fill_dissipation_residuals(std::span<DiagnosticsRow> rows, const Damping& d) {
  const std::size_t n = rows.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (!(rows[i - 1].t < rows[i].t)) {
      throw std::invalid_argument("rows are not consecutive samples of one run");
    }
  }
  if (n < 2) {
    for (auto& r : rows) r.dissipation_residual = 0.0;
    return;
  }
  auto one_sided = [&d](const DiagnosticsRow& a, const DiagnosticsRow& b) {
    const double dEdt = (b.E_u - a.E_u) / (b.t - a.t);
    const double loss =
        0.5 * (d(a.t) * a.l2_ut * a.l2_ut + d(b.t) * b.l2_ut * b.l2_ut);
    return std::abs(dEdt + loss);
  };
  rows[0].dissipation_residual = one_sided(rows[0], rows[1]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rows[i].dissipation_residual = dissipation_residual(rows[i - 1], rows[i], rows[i + 1], d);
  }
  rows[n - 1].dissipation_residual = one_sided(rows[n - 2], rows[n - 1]);
}

std::vector<double> lyapunov_decay_ratios(std::span<const DiagnosticsRow> rows, const Damping& d) {
  std::vector<double> out;
  const double alpha = d.exponent().value_or(0.0);
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double dH = (rows[i + 1].H_lyap - rows[i - 1].H_lyap) / (rows[i + 1].t - rows[i - 1].t);
    const double scale = std::pow(rows[i].t + 1.0, -alpha) *
                         (rows[i].l2_ut * rows[i].l2_ut + rows[i].hm1_G * rows[i].hm1_G);
    out.push_back(scale > 0.0 ? -dH / scale : 0.0);
  }
  return out;
}

}  // namespace dampedwave
