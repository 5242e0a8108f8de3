#include "dampedwave/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dampedwave {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: x and y differ in length");
  if (x.size() < 2) throw InsufficientSamples("fit_line needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw InsufficientSamples("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

LineFit fit_common_slope(const std::vector<std::vector<double>>& xs,
                         const std::vector<std::vector<double>>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("group counts differ");
  std::vector<double> dx, dy;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k].size() != ys[k].size()) throw std::invalid_argument("group sizes differ");
    if (xs[k].empty()) continue;
    const double n = static_cast<double>(xs[k].size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs[k].size(); ++i) {
      mx += xs[k][i];
      my += ys[k][i];
    }
    mx /= n;
    my /= n;
    for (std::size_t i = 0; i < xs[k].size(); ++i) {
      dx.push_back(xs[k][i] - mx);
      dy.push_back(ys[k][i] - my);
    }
  }
  // Regression through the origin on demeaned data.
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    sxx += dx[i] * dx[i];
    sxy += dx[i] * dy[i];
    syy += dy[i] * dy[i];
  }
  if (!(sxx > 0.0)) throw InsufficientSamples("common-slope fit: no spread within groups");
  LineFit fit;
  fit.slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    const double r = dy[i] - fit.slope * dx[i];
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

std::string to_string(RateModel m) {
  switch (m) {
    case RateModel::PolynomialDecay: return "polynomial_decay";
    case RateModel::StretchedExponential: return "stretched_exponential";
    case RateModel::Plateau: return "plateau";
    case RateModel::Oscillating: return "oscillating";
  }
  return "unknown";
}

std::string to_string(LongtimeLabel l) {
  switch (l) {
    case LongtimeLabel::ConvergedToEquilibrium: return "converged";
    case LongtimeLabel::Oscillating: return "oscillating";
    case LongtimeLabel::NonEquilibriumPlateau: return "non_equilibrium_plateau";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kMinFitSamples = 10;

struct LogSamples {
  std::vector<double> t;
  std::vector<double> log_value;
  std::pair<double, double> window;
};

/// Restricts to the window and takes logs, dropping values at the round-off
/// floor 10 eps * max.
LogSamples log_window(const Series& series, const Window& window) {
  LogSamples out;
  const double lo = window ? window->first : -std::numeric_limits<double>::infinity();
  const double hi = window ? window->second : std::numeric_limits<double>::infinity();
  if (window && !(lo <= hi)) throw std::invalid_argument("fit window is empty");

  double vmax = 0.0;
  for (const auto& s : series) {
    if (s.t < lo || s.t > hi) continue;
    if (s.value < 0.0 || std::isnan(s.value)) {
      throw NonPositiveValues("negative value " + std::to_string(s.value) + " at t = " +
                              std::to_string(s.t));
    }
    vmax = std::max(vmax, s.value);
  }
  if (!(vmax > 0.0)) throw NonPositiveValues("series has no positive values in the fit window");
  const double floor = 10.0 * std::numeric_limits<double>::epsilon() * vmax;
  for (const auto& s : series) {
    if (s.t < lo || s.t > hi || s.value <= floor) continue;
    out.t.push_back(s.t);
    out.log_value.push_back(std::log(s.value));
  }
  if (out.t.size() < kMinFitSamples) {
    throw InsufficientSamples("need at least 10 positive samples in the fit window, got " +
                              std::to_string(out.t.size()));
  }
  out.window = {out.t.front(), out.t.back()};
  return out;
}

}  // namespace

RateFit fit_polynomial_decay(const Series& series, const Window& window) {
  const LogSamples s = log_window(series, window);
  std::vector<double> x(s.t.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::log1p(s.t[i]);
  const LineFit line = fit_line(x, s.log_value);
  RateFit fit;
  fit.model = RateModel::PolynomialDecay;
  fit.lambda = -line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  fit.window = s.window;
  fit.samples = x.size();
  return fit;
}

RateFit fit_stretched_exponential(const Series& series, double alpha, const Window& window) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidAlpha("alpha must lie in [0, 1)");
  const LogSamples s = log_window(series, window);
  const double power = 1.0 - alpha;
  std::vector<double> x(s.t.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(s.t[i], power);
  const LineFit line = fit_line(x, s.log_value);
  RateFit fit;
  fit.model = RateModel::StretchedExponential;
  fit.rate = -line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.power = power;
  fit.r_squared = line.r_squared;
  fit.window = s.window;
  fit.samples = x.size();
  return fit;
}

LambdaSup theoretical_lambda_sup(double theta, double alpha) {
  if (!(theta > 0.0 && theta <= 0.5)) throw std::invalid_argument("theta must lie in (0, 1/2]");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
  if (theta == 0.5) {
    return alpha < 1.0 ? LambdaSup{LambdaSup::Kind::Unbounded, 0.0}
                       : LambdaSup{LambdaSup::Kind::NotApplicable, 0.0};
  }
  const double numerator = theta - (1.0 - theta) * alpha;
  // Relative tolerance so that alpha = theta/(1-theta) computed in floating
  // point lands on the boundary.
  if (numerator <= 1e-12 * theta) return {LambdaSup::Kind::NotApplicable, 0.0};
  return {LambdaSup::Kind::Finite, numerator / (1.0 - 2.0 * theta)};
}

LongtimeClass classify_longtime(const Series& series, const std::vector<double>& equilibrium_levels,
                                const ClassifyParams& params) {
  if (!(params.tail_fraction > 0.0 && params.tail_fraction <= 0.25)) {
    throw std::invalid_argument("tail window must be at most a quarter of the series span");
  }
  if (series.size() < 8) throw InsufficientSamples("series too short to classify");
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (!(series[i].t > series[i - 1].t)) throw std::invalid_argument("series times must increase");
  }
  const double t0 = series.front().t;
  const double t1 = series.back().t;
  const double tail_start = t1 - params.tail_fraction * (t1 - t0);

  LongtimeClass out;
  double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t count = 0;
  for (const auto& s : series) {
    out.global_max = std::max(out.global_max, s.value);
    if (s.t < tail_start) continue;
    sum += s.value;
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
    ++count;
  }
  if (count < 2) throw InsufficientSamples("tail window holds fewer than two samples");
  out.tail_mean = sum / static_cast<double>(count);
  out.tail_peak_to_peak = hi - lo;
  out.fit.window = {tail_start, t1};
  out.fit.samples = count;

  out.nearest_level_gap = std::numeric_limits<double>::infinity();
  for (double level : equilibrium_levels) {
    out.nearest_level_gap = std::min(out.nearest_level_gap, std::abs(out.tail_mean - level));
  }

  // Oscillation is judged on the tail's own scale: the spread left after
  // removing a linear trend, against the tail maximum. Tails that have already
  // shrunk to the equilibrium tolerance never count as oscillating.
  std::vector<double> tt, vv;
  for (const auto& s : series) {
    if (s.t < tail_start) continue;
    tt.push_back(s.t);
    vv.push_back(s.value);
  }
  const LineFit trend = fit_line(tt, vv);
  double rlo = std::numeric_limits<double>::infinity(), rhi = -rlo;
  for (std::size_t i = 0; i < tt.size(); ++i) {
    const double r = vv[i] - (trend.intercept + trend.slope * tt[i]);
    rlo = std::min(rlo, r);
    rhi = std::max(rhi, r);
  }
  out.detrended_peak_to_peak = rhi - rlo;
  const bool above_tolerance = hi > params.eq_tol * out.global_max;
  if (above_tolerance && out.detrended_peak_to_peak >= params.osc_frac * hi) {
    out.label = LongtimeLabel::Oscillating;
    out.fit.model = RateModel::Oscillating;
    out.fit.peak_to_peak = out.tail_peak_to_peak;
    out.fit.level = out.tail_mean;
    return out;
  }
  out.fit.model = RateModel::Plateau;
  out.fit.level = out.tail_mean;
  out.fit.peak_to_peak = out.tail_peak_to_peak;
  out.label = out.nearest_level_gap <= params.eq_tol * out.global_max
                  ? LongtimeLabel::ConvergedToEquilibrium
                  : LongtimeLabel::NonEquilibriumPlateau;
  return out;
}

}  // namespace dampedwave
