#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dampedwave {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonPositiveValues : public FitError {
 public:
  using FitError::FitError;
};
class InsufficientSamples : public FitError {
 public:
  using FitError::FitError;
};
class InvalidAlpha : public FitError {
 public:
  using FitError::FitError;
};

struct SeriesSample {
  double t = 0.0;
  double value = 0.0;
};
using Series = std::vector<SeriesSample>;

/// Ordinary least squares y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// 1 - SS_res / SS_tot; defined as 1 when y is constant and fitted exactly.
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// One slope shared by several groups, each with its own intercept.
/// r_squared is computed on the within-group (demeaned) data; intercept is
/// left at 0.
LineFit fit_common_slope(const std::vector<std::vector<double>>& xs,
                         const std::vector<std::vector<double>>& ys);

enum class RateModel { PolynomialDecay, StretchedExponential, Plateau, Oscillating };

std::string to_string(RateModel m);

struct RateFit {
  RateModel model = RateModel::Plateau;
  /// PolynomialDecay: value ~ (1+t)^{-lambda}.
  double lambda = 0.0;
  /// StretchedExponential: value ~ prefactor * exp(-rate * t^{power}), power = 1 - alpha.
  double rate = 0.0;
  double prefactor = 0.0;
  double power = 1.0;
  /// Plateau level / Oscillating peak-to-peak over the tail window.
  double level = 0.0;
  double peak_to_peak = 0.0;
  double r_squared = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  std::size_t samples = 0;
};

/// Inclusive time window; an empty optional means the whole series.
using Window = std::optional<std::pair<double, double>>;

/// Fits log(value) against log(1+t).
RateFit fit_polynomial_decay(const Series& series, const Window& window = std::nullopt);

/// Fits log(value) against t^{1-alpha}; alpha must lie in [0, 1).
RateFit fit_stretched_exponential(const Series& series, double alpha,
                                  const Window& window = std::nullopt);

struct LambdaSup {
  enum class Kind { Finite, Unbounded, NotApplicable };
  Kind kind = Kind::NotApplicable;
  double value = 0.0;
};

/// Upper end of the polynomial rate interval, (theta - (1-theta) alpha) / (1 - 2 theta).
/// theta = 1/2 is the exponential branch (Unbounded); a nonpositive numerator
/// means alpha is outside the admissible window (NotApplicable).
LambdaSup theoretical_lambda_sup(double theta, double alpha);

enum class LongtimeLabel { ConvergedToEquilibrium, Oscillating, NonEquilibriumPlateau };

std::string to_string(LongtimeLabel l);

struct ClassifyParams {
  double tail_fraction = 0.25;
  double osc_frac = 0.2;
  double eq_tol = 0.05;
};

struct LongtimeClass {
  LongtimeLabel label = LongtimeLabel::NonEquilibriumPlateau;
  RateFit fit;  ///< Plateau(level) or Oscillating(peak_to_peak)
  double tail_mean = 0.0;
  double tail_peak_to_peak = 0.0;
  /// Peak-to-peak of the tail after removing its least-squares line.
  double detrended_peak_to_peak = 0.0;
  double global_max = 0.0;
  /// min |tail_mean - level| over the supplied equilibrium levels.
  double nearest_level_gap = 0.0;
};

/// Classifies the tail of a nonnegative series (default: last 25% of the span).
///
/// Let A be the global maximum, m the tail mean and M the tail maximum.
///  - Oscillating: M > eq_tol * A and the detrended tail peak-to-peak is at
///    least osc_frac * M.
///  - ConvergedToEquilibrium: otherwise, if |m - level| <= eq_tol * A for some
///    supplied level.
///  - NonEquilibriumPlateau: otherwise.
/// Every threshold is relative, so scaling series and levels together leaves
/// the label unchanged.
LongtimeClass classify_longtime(const Series& series, const std::vector<double>& equilibrium_levels,
                                const ClassifyParams& params = {});

}  // namespace dampedwave
