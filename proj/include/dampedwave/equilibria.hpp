#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dampedwave/grid.hpp"
#include "dampedwave/physics.hpp"

namespace dampedwave {

class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EquilibriumResult {
  Field psi;
  double residual_hm1 = 0.0;
  int iterations = 0;
  bool converged = false;
  double e0 = 0.0;
  /// H^-1 residual before the first step and after every accepted step.
  std::vector<double> residual_history;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 50;
  int max_halvings = 30;
};

/// Newton's method for -Delta_h psi + f(psi) = 0, globalized by halving the
/// step until the H^-1 residual decreases. Returns the best iterate with
/// converged = false when max_iter is exhausted. Throws SingularJacobian on a
/// vanishing pivot.
EquilibriumResult solve_equilibrium(const Field& guess, const Nonlinearity& nl, const Grid1D& g,
                                    const NewtonOptions& opts = {});

/// Canonical seed for nontrivial equilibria: amplitude * sin(pi (x + L) / 2L).
Field bump_guess(const Grid1D& g, double amplitude);

struct DirectionSlope {
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

struct LojasiewiczProbe {
  /// Common slope of log|G|_{H^-1} against log|E_0(psi + eps phi) - E_0(psi)|,
  /// fitted with a separate intercept per direction. Estimates 1 - theta.
  double slope = 0.0;
  double r_squared = 0.0;
  std::pair<double, double> epsilon_range{0.0, 0.0};
  std::size_t direction_count = 0;
  std::vector<DirectionSlope> per_direction;
};

/// Default probe amplitudes: 12 geometric values in [1e-3, 1e-1].
std::vector<double> default_probe_epsilons();

/// Scales phi to unit H^1 seminorm.
Field normalize_h1(const Field& phi, const Grid1D& g);

/// Probes the Lojasiewicz inequality around a converged equilibrium along the
/// given directions (each rescaled to unit H^1 seminorm). Samples whose energy
/// gap is at most 1e-13 are skipped; fewer than 4 admissible samples throws
/// DegenerateSamples.
LojasiewiczProbe lojasiewicz_probe(const EquilibriumResult& eq, const Nonlinearity& nl,
                                   const Grid1D& g, const std::vector<Field>& directions,
                                   const std::vector<double>& epsilons = default_probe_epsilons());

}  // namespace dampedwave
