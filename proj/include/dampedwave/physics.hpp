#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "dampedwave/grid.hpp"

namespace dampedwave {

// ---------------------------------------------------------------------------
// Nonlinearities f(u) with potential F(u) = int_0^u f, F(0) = 0.

struct SineGordon {
  double b = 1.0;  ///< f(s) = b sin s, b > 0
};

struct KleinGordon {
  double a = 1.0;  ///< f(s) = a s + |s|^{p-1} s
  double p = 3.0;  ///< p >= 1
};

struct LinearMass {
  double b = 1.0;  ///< f(s) = b s
};

class Nonlinearity {
 public:
  using Variant = std::variant<SineGordon, KleinGordon, LinearMass>;

  Nonlinearity(SineGordon m);
  Nonlinearity(KleinGordon m);
  Nonlinearity(LinearMass m);

  double f(double s) const;
  double df(double s) const;
  double potential(double s) const;

  /// Applies f node by node.
  Field apply(const Field& v) const;

  const Variant& variant() const { return model_; }
  /// Short identifier used in file names: "sine_gordon", "klein_gordon", "linear_mass".
  std::string name() const;
  /// Human-readable parameter summary, e.g. "klein_gordon(a=1, p=3)".
  std::string describe() const;

 private:
  Variant model_;
};

// ---------------------------------------------------------------------------
// Damping coefficients h(t).

struct NoDamping {};
struct ConstantDamping {
  double c = 1.0;
};
/// c (t+1)^{-alpha}
struct PowerDecay {
  double c = 1.0;
  double alpha = 0.0;
};
/// c t^alpha
struct PowerGrowth {
  double c = 1.0;
  double alpha = 0.0;
};
/// (t+1)^{-alpha} - mu (t+1) / (1+alpha) - alpha (t+1)^{-1}, alpha < -1.
/// Makes w(t) = 1 - mu (t+1)^{1+alpha} / (1+alpha) an exact solution of
/// w'' + h w' + mu w = 0.
struct RemarkTwoDamping {
  double mu = 1.0;
  double alpha = -2.0;
};

class Damping {
 public:
  using Variant = std::variant<NoDamping, ConstantDamping, PowerDecay, PowerGrowth, RemarkTwoDamping>;

  Damping() : model_(NoDamping{}) {}
  Damping(NoDamping m) : model_(m) {}
  Damping(ConstantDamping m);
  Damping(PowerDecay m);
  Damping(PowerGrowth m);
  Damping(RemarkTwoDamping m);

  double operator()(double t) const;

  /// Power-law exponent: 0 for zero/constant damping, alpha for the power
  /// families, empty for the constructed explicit-solution damping.
  std::optional<double> exponent() const;

  const Variant& variant() const { return model_; }
  std::string describe() const;

 private:
  Variant model_;
};

/// The seven coefficients h0..h6 of the numerical study:
/// 0, 1, (t+1)^{-1/2}, (t+1)^{-1}, t^{1/2}, t, t^{3/2}.
Damping paper_damping(int index);

/// Lojasiewicz exponent of the model at the zero equilibrium; mu0 is the first
/// Dirichlet eigenvalue of -Delta.
double lojasiewicz_theta(const Nonlinearity& nl, double mu0);

enum class Admissibility { Admissible, NotAdmissible, NotApplicable };

/// Checks 0 <= alpha < theta / (1 - theta).
Admissibility admissible_alpha(const Damping& d, double theta);

/// Initial data (u0, u1) = (0, 4 sqrt(1-c^2) / cosh(x sqrt(1-c^2))).
std::pair<Field, Field> initial_profile(const Grid1D& g, double wave_speed);

}  // namespace dampedwave
