#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dampedwave/app/config.hpp"
#include "dampedwave/equilibria.hpp"
#include "dampedwave/integrator.hpp"
#include "dampedwave/ode_lab.hpp"
#include "dampedwave/rates.hpp"

namespace dampedwave::app {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitRuntime = 2, kExitIo = 3 };

/// Runs a command body and maps exceptions to exit codes, printing the message.
int guarded(const std::function<int()>& body, std::ostream& err);

/// Thrown when a run blows up; the partial CSV has already been written.
class RunFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulationOutcome {
  std::filesystem::path csv;
  RunResult run;
  /// Reference equilibrium the l2_dist_psi column measures against.
  Field psi;
  /// L2 norms of the equilibria known for this run (always includes 0).
  std::vector<double> equilibrium_levels;
  /// Set when newton-from-final failed and psi fell back to zero.
  std::string psi_note;
};

struct SimulateOptions {
  /// File name stem; defaults to "<model>_<damping>".
  std::string stem;
  /// Write full-field snapshots every this many time units (0 disables).
  double snapshot_every = 0.0;
};

/// Runs one experiment and writes `<out_dir>/<stem>.csv`. Does not throw on
/// blow-up; check outcome.run.blow_up.
SimulationOutcome simulate(const ExperimentConfig& cfg, const SimulateOptions& opts = {});

/// simulate() plus a key = value report; throws RunFailed on blow-up.
SimulationOutcome cmd_simulate(const ExperimentConfig& cfg, std::ostream& report);

struct SweepEntry {
  int damping_index = 0;
  std::string status = "ok";
  std::filesystem::path csv;
  std::optional<LongtimeClass> classification;
  std::optional<RateFit> polynomial;
  std::optional<RateFit> stretched;
  double theta = 0.5;
  LambdaSup lambda_sup;
  Admissibility admissible = Admissibility::NotApplicable;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::filesystem::path summary;
};

/// Runs the base config once per preset damping index, writing
/// `<out_dir>/<stem>_h<i>.csv` and `<out_dir>/<stem>_summary.tsv`. Failures of
/// individual runs are recorded in their entry and do not stop the sweep.
SweepResult cmd_sweep(const ExperimentConfig& base, const std::vector<int>& dampings,
                      std::ostream& report, int workers = 1, std::string stem = {});

/// zero | bump | bump:<amplitude> | file:<path>
Field parse_guess(const std::string& spec, const ExperimentConfig& cfg, const Grid1D& g);

EquilibriumResult cmd_equilibrium(const ExperimentConfig& cfg, const std::string& guess,
                                  std::ostream& report);

LojasiewiczProbe cmd_probe(const ExperimentConfig& cfg, const std::string& guess,
                           std::uint32_t seed, std::ostream& report);

struct RateFitRequest {
  std::filesystem::path csv;
  std::string model = "polynomial";  ///< polynomial | stretched
  double alpha = 0.0;
  Window window;
  /// Column to fit; empty picks l2_dist_psi when present, else the second column.
  std::string column;
  /// When set, the report also prints theoretical_lambda_sup(theta, alpha).
  std::optional<double> theta;
};

RateFit cmd_rate_fit(const RateFitRequest& req, std::ostream& report);

struct OdeOutcome {
  std::vector<ModeSample> samples;
  LongtimeClass classification;
  double energy_ratio = 0.0;
};

/// Integrates w'' + (t+1)^{-alpha} w' + mu w = 0 and classifies |w|.
OdeOutcome cmd_ode(const ModeODE& mode, const std::optional<std::filesystem::path>& csv,
                   std::ostream& report);

ExplicitSolutionReport cmd_ode_explicit(double mu, double alpha, const ExperimentConfig& cfg,
                                        std::size_t mode_index, std::ostream& report);

/// fig1 | fig2 | fig3. Writes everything under `<out_dir>/<figure>/` along with
/// manifest.tsv (`<relative file>\t<config hash>` per artifact). Returns the
/// manifest entries.
std::vector<std::pair<std::string, std::string>> cmd_reproduce(const std::string& figure,
                                                               const ExperimentConfig& base,
                                                               std::ostream& report,
                                                               int workers = 1);

}  // namespace dampedwave::app
