// Command-line front end for the damped semilinear wave toolkit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dampedwave/app/commands.hpp"
#include "dampedwave/app/csv_io.hpp"

namespace app = dampedwave::app;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "key = value configuration file");
  cmd->add_option("--out", o.out_dir, "output directory (overrides out_dir)");
  cmd->add_option("--set", o.overrides, "key=value override, repeatable");
  cmd->add_option("--workers", o.workers, "parallel runs for sweeps")->check(CLI::PositiveNumber);
}

app::ExperimentConfig load_config(const CommonOptions& o) {
  app::ConfigBuilder builder;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw app::IoError("cannot read config '" + o.config_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    builder.parse_text(ss.str());
  }
  for (const auto& s : o.overrides) builder.apply_override(s);
  if (!o.out_dir.empty()) builder.set("out_dir", o.out_dir, "--out");
  return builder.build();
}

std::vector<int> parse_dampings(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.size() == 2 && item[0] == 'h') item = item.substr(1);
    if (item.size() != 1 || item[0] < '0' || item[0] > '6') {
      throw app::ConfigError(app::ConfigError::Kind::TypeMismatch, "--dampings",
                             "expected indices 0..6, got '" + item + "'");
    }
    out.push_back(item[0] - '0');
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Finite-difference experiments for damped semilinear wave equations"};
  cli.require_subcommand(1);

  CommonOptions common;

  auto* simulate = cli.add_subcommand("simulate", "run one experiment and write its diagnostics CSV");
  add_common(simulate, common);

  auto* sweep = cli.add_subcommand("sweep", "run the base experiment for several preset dampings");
  add_common(sweep, common);
  std::string damping_list = "0,1,2,3,4,5,6";
  sweep->add_option("--dampings", damping_list, "comma-separated indices (h0..h6); may be empty");

  auto* equilibrium = cli.add_subcommand("equilibrium", "Newton solve for -psi'' + f(psi) = 0");
  add_common(equilibrium, common);
  std::string guess = "zero";
  equilibrium->add_option("--guess", guess, "zero | bump | bump:<amplitude> | file:<path>");

  auto* probe = cli.add_subcommand("probe", "fit the Lojasiewicz slope around an equilibrium");
  add_common(probe, common);
  probe->add_option("--guess", guess, "initial guess for the equilibrium");
  std::uint32_t seed = 12345;
  probe->add_option("--seed", seed, "seed for the random probe direction");

  auto* rate_fit = cli.add_subcommand("rate-fit", "fit a decay law to a CSV column");
  app::RateFitRequest fit_req;
  std::string csv_path;
  std::vector<double> window;
  double theta = 0.0;
  rate_fit->add_option("csv", csv_path, "input CSV")->required();
  rate_fit->add_option("--model", fit_req.model, "polynomial | stretched");
  rate_fit->add_option("--alpha", fit_req.alpha, "damping exponent for the stretched fit");
  rate_fit->add_option("--window", window, "t_lo t_hi")->expected(2);
  rate_fit->add_option("--column", fit_req.column, "column to fit");
  auto* theta_opt = rate_fit->add_option("--theta", theta, "print the theoretical rate bound too");

  auto* ode = cli.add_subcommand("ode", "single-mode ODE w'' + (t+1)^{-alpha} w' + mu w = 0");
  add_common(ode, common);
  dampedwave::ModeODE mode;
  double ode_alpha = 2.0;
  bool explicit_check = false;
  std::size_t mode_index = 1;
  ode->add_option("--mu", mode.mu, "mode eigenvalue");
  ode->add_option("--alpha", ode_alpha, "damping exponent (or construction exponent < -1 with --explicit)");
  ode->add_option("--omega0", mode.omega0, "initial value");
  ode->add_option("--omega0-dot", mode.omega0_dot, "initial rate");
  ode->add_option("--dt", mode.dt, "step");
  ode->add_option("--T", mode.t_final, "final time");
  ode->add_flag("--explicit", explicit_check, "verify the explicit non-convergent solution instead");
  ode->add_option("--mode", mode_index, "discrete mode index for --explicit");

  auto* reproduce = cli.add_subcommand("reproduce", "regenerate the CSV bundle behind a figure");
  add_common(reproduce, common);
  std::string figure;
  reproduce->add_option("figure", figure, "fig1 | fig2 | fig3")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : app::kExitConfig;
  }

  std::ostream& out = std::cout;
  return app::guarded(
      [&]() -> int {
        if (*simulate) {
          try {
            app::cmd_simulate(load_config(common), out);
          } catch (const app::RunFailed& e) {
            std::cerr << "blow-up: " << e.what() << '\n';
            return app::kExitRuntime;
          }
        } else if (*sweep) {
          const auto cfg = load_config(common);
          const auto result = app::cmd_sweep(cfg, parse_dampings(damping_list), out, common.workers);
          for (const auto& e : result.entries) {
            if (e.status.rfind("ok", 0) != 0) std::cerr << "h" << e.damping_index << ": " << e.status << '\n';
          }
        } else if (*equilibrium) {
          app::cmd_equilibrium(load_config(common), guess, out);
        } else if (*probe) {
          app::cmd_probe(load_config(common), guess, seed, out);
        } else if (*rate_fit) {
          fit_req.csv = csv_path;
          if (window.size() == 2) fit_req.window = std::make_pair(window[0], window[1]);
          if (*theta_opt) fit_req.theta = theta;
          app::cmd_rate_fit(fit_req, out);
        } else if (*ode) {
          const auto cfg = load_config(common);
          if (explicit_check) {
            app::cmd_ode_explicit(mode.mu, ode_alpha, cfg, mode_index, out);
          } else {
            mode.damping = dampedwave::PowerDecay{1.0, ode_alpha};
            app::cmd_ode(mode, std::filesystem::path(cfg.out_dir) / "mode_ode.csv", out);
          }
        } else if (*reproduce) {
          app::cmd_reproduce(figure, load_config(common), out, common.workers);
        }
        return app::kExitOk;
      },
      std::cerr);
}
