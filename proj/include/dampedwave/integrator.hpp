#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dampedwave/diagnostics.hpp"
#include "dampedwave/grid.hpp"
#include "dampedwave/physics.hpp"

namespace dampedwave {

/// Values beyond this magnitude are treated as a blown-up run.
inline constexpr double kBlowUpThreshold = 1e12;

class BlowUp : public std::runtime_error {
 public:
  BlowUp(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

 private:
  double last_valid_time_;
};

struct SchemeConfig {
  double dt = 0.05;
  double t_final = 200.0;
  double cfl_safety = 1.0;

  /// Number of steps to reach t_final (t_final / dt rounded to nearest).
  std::size_t steps() const;
  void validate() const;
};

/// Two consecutive levels of the central-difference scheme.
struct WaveState {
  Field u_prev;
  Field u_curr;
  std::size_t step_index = 1;
  double dt = 0.0;

  double time() const { return static_cast<double>(step_index) * dt; }
};

/// dt <= cfl_safety * dx.
bool cfl_check(const SchemeConfig& cfg, const Grid1D& g);

/// Second-order start: u1 = u0 + dt v0 + dt^2/2 (Delta u0 - h(0) v0 - f(u0)).
WaveState bootstrap(const Field& u0, const Field& v0, const Nonlinearity& nl, const Damping& d,
                    const Grid1D& g, const SchemeConfig& cfg);

/// One step of
///   (u+ - 2u + u-)/dt^2 + h(t_n)(u+ - u-)/(2dt) - Delta_h u + f(u) = 0
/// solved for u+. Throws BlowUp on non-finite or huge values.
WaveState step(const WaveState& s, const Nonlinearity& nl, const Damping& d, const Grid1D& g);

/// Centered velocity (u_next - u_prev) / 2dt at the level of s.u_curr.
Field velocity(const WaveState& s, const WaveState& next);

struct RunOptions {
  std::size_t record_every = 4;
  double eta = 0.01;
  /// Reference equilibrium for l2_dist_psi and the Lyapunov functional.
  std::optional<Field> psi;
  /// Called at every recorded sample with the current displacement.
  std::function<void(double t, const Field& u)> on_record;
};

struct RunResult {
  std::vector<DiagnosticsRow> rows;
  /// Last computed level; equals the state at t_final when the run completed.
  Field final_u;
  Field final_ut;
  double final_time = 0.0;
  /// Set when the run stopped early.
  std::optional<std::string> blow_up;
};

/// Integrates to cfg.t_final, recording diagnostics at step 0 and every
/// record_every steps (and always at the final step). A blow-up ends the run
/// early; rows recorded so far are kept.
RunResult run(const Field& u0, const Field& v0, const Nonlinearity& nl, const Damping& d,
              const Grid1D& g, const SchemeConfig& cfg, const RunOptions& opts = {});

}  // namespace dampedwave
