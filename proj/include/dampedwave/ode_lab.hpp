#pragma once

#include <cstddef>
#include <vector>

#include "dampedwave/grid.hpp"
#include "dampedwave/physics.hpp"

namespace dampedwave {

/// Single-mode reduction w'' + h(t) w' + mu w = 0.
struct ModeODE {
  double mu = 1.0;
  Damping damping;
  double omega0 = 1.0;
  double omega0_dot = 0.0;
  double dt = 0.01;
  double t_final = 200.0;
};

struct ModeSample {
  double t = 0.0;
  double omega = 0.0;
  double omega_dot = 0.0;
  /// 1/2 w'^2 + 1/2 mu w^2
  double energy = 0.0;
};

/// Classical fourth-order Runge-Kutta on (w, w'). Returns the initial sample
/// plus one sample per step. Throws BlowUp on non-finite values.
std::vector<ModeSample> integrate_mode(const ModeODE& m);

/// Coefficient h for which w(t) = 1 - mu (t+1)^{1+alpha} / (1+alpha) solves the
/// mode equation exactly; alpha < -1, mu > 0.
Damping remark_two_damping(double mu, double alpha);

/// The explicit solution w and its first two derivatives.
struct ExplicitMode {
  double mu;
  double alpha;
  double w(double t) const;
  double w_dot(double t) const;
  double w_ddot(double t) const;
};

struct ExplicitSolutionReport {
  double mu = 0.0;
  double alpha = 0.0;
  double b = 0.0;  ///< mass coefficient making mu = lambda_k^h + b
  std::size_t mode_index = 1;
  double w0 = 0.0;
  double w0_dot = 0.0;
  /// max |w'' + h w' + mu w| over the sample times
  double ode_residual = 0.0;
  /// max over sample times of max_i |u_tt - Delta_h u + h u_t + b u| with u = w(t) e_k
  double pde_residual = 0.0;
  /// |u(t) - e_k|_{L2} at the sample times (decreasing to 0)
  std::vector<double> limit_times;
  std::vector<double> limit_distance;
  /// |G(e_k)|_{H^-1} and mu |e_k|_{H^-1}; equal and positive, so e_k is not an equilibrium
  double hm1_G_limit = 0.0;
  double mu_hm1_mode = 0.0;
};

/// Verifies the explicit non-convergent solution on the discrete mode e_k:
/// ODE residual of w, full discrete PDE residual of w(t) e_k for
/// LinearMass(b = mu - lambda_k^h), and that the limit e_k is not an equilibrium.
/// sample_times defaults to 50 points spread over [0, 100].
ExplicitSolutionReport explicit_solution_check(double mu, double alpha, const Grid1D& g,
                                               std::size_t mode_index,
                                               std::vector<double> sample_times = {});

}  // namespace dampedwave
