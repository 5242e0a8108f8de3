#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dampedwave/grid.hpp"
#include "dampedwave/integrator.hpp"
#include "dampedwave/physics.hpp"

namespace dampedwave::app {

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { UnknownKey, TypeMismatch, ConstraintViolation, Syntax };

  ConfigError(Kind kind, std::string location, const std::string& message);

  Kind kind() const { return kind_; }
  /// "line 3", "--set dt=0.2", or "config" for cross-key checks without a source.
  const std::string& location() const { return location_; }

 private:
  Kind kind_;
  std::string location_;
};

std::string to_string(ConfigError::Kind kind);

/// Flat experiment description. Defaults reproduce the numerical study:
/// sine-Gordon b = 1, h0, L = 20, dx = 0.1, dt = 0.05, T = 200, c = 0.2.
struct ExperimentConfig {
  std::string model = "sine_gordon";  ///< sine_gordon | klein_gordon | linear_mass
  double b = 1.0;
  double a = 1.0;
  double p = 3.0;
  /// h0..h6, or zero | constant | power_decay | power_growth using damping_c / damping_alpha.
  std::string damping = "h0";
  double damping_c = 1.0;
  double damping_alpha = 0.0;
  double L = 20.0;
  double dx = 0.1;
  double dt = 0.05;
  double T = 200.0;
  double c = 0.2;
  double eta = 0.01;
  int record_every = 4;
  std::string out_dir = ".";
  /// zero | newton-from-final | file:<path>
  std::string psi_source = "zero";
  /// paper | zero
  std::string initial_data = "paper";

  Nonlinearity nonlinearity() const;
  Damping damping_model() const;
  Grid1D grid() const;
  SchemeConfig scheme() const;

  /// "h3" for the preset coefficients, otherwise the damping kind.
  std::string damping_tag() const;

  /// Canonical key = value text, one key per line in a fixed order. out_dir is
  /// left out: it says where results go, not what they are.
  std::string canonical_text() const;
  /// 16 hex digits of FNV-1a over canonical_text().
  std::string hash() const;
};

/// Source-tracking builder: records which line set each key so that
/// constraint violations can name it.
class ConfigBuilder {
 public:
  ConfigBuilder() = default;
  explicit ConfigBuilder(ExperimentConfig base) : cfg_(std::move(base)) {}

  /// Parses `key = value` lines; `#` starts a comment.
  void parse_text(std::string_view text);
  /// Applies one `key=value` override (e.g. from --set).
  void apply_override(std::string_view assignment);
  void set(std::string_view key, std::string_view value, const std::string& location);

  /// Validates cross-key constraints and returns the config.
  ExperimentConfig build() const;

 private:
  std::string where(std::string_view key) const;

  ExperimentConfig cfg_;
  std::map<std::string, std::string, std::less<>> origin_;
};

/// parse_text + build.
ExperimentConfig parse_config(std::string_view text);

}  // namespace dampedwave::app
