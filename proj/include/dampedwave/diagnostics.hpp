#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dampedwave/grid.hpp"
#include "dampedwave/physics.hpp"

namespace dampedwave {

/// Scalar functionals of a trajectory at one recorded time.
struct DiagnosticsRow {
  double t = 0.0;
  double l2_u = 0.0;
  double h1_u = 0.0;
  double l2_ut = 0.0;
  double hm1_G = 0.0;
  double E_u = 0.0;
  double E_0_u = 0.0;
  double H_lyap = 0.0;
  double dissipation_residual = 0.0;
  std::optional<double> l2_dist_psi;
  /// Velocity came from a one-sided difference (last sample of a run).
  bool one_sided_velocity = false;
};

/// E_0(v) = 1/2 |grad v|^2 + int F(v).
double stationary_energy(const Field& v, const Nonlinearity& nl, const Grid1D& g);

/// E_u = E_0(u) + 1/2 |u_t|^2.
double total_energy(const Field& u, const Field& ut, const Nonlinearity& nl, const Grid1D& g);

/// G(v) = -Delta_h v + f(v).
Field G_residual(const Field& v, const Nonlinearity& nl, const Grid1D& g);

/// Weight eta (t+1)^{-alpha} of the cross term in the Lyapunov functional.
/// The constructed explicit-solution damping has no power exponent and gets alpha = 0.
double lyapunov_weight(const Damping& d, double eta, double t);

/// H(t) = E_u - E_0(psi) + eta (t+1)^{-alpha} <G(u), u_t>_{H^-1}.
double lyapunov(const Field& u, const Field& ut, const Nonlinearity& nl, const Damping& d,
                const Grid1D& g, const Field& psi, double eta, double t);

/// Full row for one sample; psi (if given) is also the Lyapunov reference,
/// otherwise the zero equilibrium is used there.
DiagnosticsRow make_row(double t, const Field& u, const Field& ut, const Nonlinearity& nl,
                        const Damping& d, const Grid1D& g, const Field* psi, double eta);

/// |dE/dt + h(t_mid) |u_t(t_mid)|^2| for the sample triple (before, mid, after),
/// with dE/dt taken as the centered difference across the outer samples.
double dissipation_residual(const DiagnosticsRow& before, const DiagnosticsRow& mid,
                            const DiagnosticsRow& after, const Damping& d);

/// Fills DiagnosticsRow::dissipation_residual along a series. Interior rows use
/// the centered form; the end rows use the one-sided difference to their
/// neighbour with h and |u_t|^2 averaged over the pair. Throws
/// std::invalid_argument when times are not strictly increasing.
void fill_dissipation_residuals(std::span<DiagnosticsRow> rows, const Damping& d);

/// Measured ratio -H'(t) / ((t+1)^{-alpha} (|u_t|^2 + |G|_{H^-1}^2)) at interior
/// samples. Positive values bounded away from zero are what the Lyapunov
/// argument needs; the ratio is reported, not asserted.
std::vector<double> lyapunov_decay_ratios(std::span<const DiagnosticsRow> rows, const Damping& d);

}  // namespace dampedwave
