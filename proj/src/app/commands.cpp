#include "dampedwave/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "dampedwave/app/csv_io.hpp"
#include "dampedwave/diagnostics.hpp"

namespace dampedwave::app {

namespace fs = std::filesystem;

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

namespace {

std::string num(double v) { return format_number(v); }

Window default_fit_window(double T) {
  if (T >= 100.0) return std::make_pair(50.0, T);
  return std::make_pair(0.25 * T, T);
}

std::pair<Field, Field> initial_data(const ExperimentConfig& cfg, const Grid1D& g) {
  if (cfg.initial_data == "zero") return {Field::zeros(g), Field::zeros(g)};
  return initial_profile(g, cfg.c);
}

RunResult integrate(const ExperimentConfig& cfg, const Grid1D& g, const Field& u0, const Field& v0,
                    std::optional<Field> psi, const std::function<void(double, const Field&)>& hook) {
  RunOptions opts;
  opts.record_every = static_cast<std::size_t>(cfg.record_every);
  opts.eta = cfg.eta;
  opts.psi = std::move(psi);
  opts.on_record = hook;
  return run(u0, v0, cfg.nonlinearity(), cfg.damping_model(), g, cfg.scheme(), opts);
}

std::string admissibility_name(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "yes";
    case Admissibility::NotAdmissible: return "no";
    case Admissibility::NotApplicable: return "n/a";
  }
  return "n/a";
}

std::string lambda_sup_text(const LambdaSup& s) {
  switch (s.kind) {
    case LambdaSup::Kind::Finite: return num(s.value);
    case LambdaSup::Kind::Unbounded: return "unbounded";
    case LambdaSup::Kind::NotApplicable: return "not_applicable";
  }
  return "not_applicable";
}

Series series_from(const std::vector<DiagnosticsRow>& rows, bool distance) {
  Series s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back({r.t, distance ? r.l2_dist_psi.value_or(r.l2_u) : r.l2_u});
  return s;
}

}  // namespace

SimulationOutcome simulate(const ExperimentConfig& cfg, const SimulateOptions& sopts) {
  const Grid1D g = cfg.grid();
  const Nonlinearity nl = cfg.nonlinearity();
  const auto [u0, v0] = initial_data(cfg, g);

  SimulationOutcome out;
  const std::string stem =
      sopts.stem.empty() ? nl.name() + "_" + cfg.damping_tag() : sopts.stem;
  out.csv = fs::path(cfg.out_dir) / (stem + ".csv");

  if (cfg.psi_source == "zero") {
    out.psi = Field::zeros(g);
  } else if (cfg.psi_source == "newton-from-final") {
    const RunResult first = integrate(cfg, g, u0, v0, std::nullopt, {});
    if (first.blow_up) {
      throw RunFailed("reference run for newton-from-final blew up: " + *first.blow_up);
    }
    std::optional<EquilibriumResult> eq;
    try {
      eq = solve_equilibrium(first.final_u, nl, g);
    } catch (const SingularJacobian&) {
    }
    if (eq && eq->converged) {
      out.psi = eq->psi;
      write_field_csv(fs::path(cfg.out_dir) / (stem + "_psi.csv"), out.psi, g);
    } else {
      out.psi = Field::zeros(g);
      out.psi_note = "newton-from-final did not converge; measuring against psi = 0";
    }
  } else {
    out.psi = read_field_csv(cfg.psi_source.substr(5), g);
  }
  out.equilibrium_levels = {0.0};
  const double psi_norm = l2_norm(out.psi, g);
  if (psi_norm > 0.0) out.equilibrium_levels.push_back(psi_norm);

  std::optional<SnapshotCsvWriter> snapshots;
  std::function<void(double, const Field&)> hook;
  if (sopts.snapshot_every > 0.0) {
    snapshots.emplace(fs::path(cfg.out_dir) / (stem + "_snapshots.csv"), g);
    const double every = sopts.snapshot_every;
    hook = [&snapshots, every](double t, const Field& u) {
      const double k = std::round(t / every);
      if (std::abs(t - k * every) < 1e-9 * std::max(1.0, t)) snapshots->write(t, u);
    };
  }

  out.run = integrate(cfg, g, u0, v0, out.psi, hook);
  DiagnosticsCsvWriter writer(out.csv);
  writer.write_all(out.run.rows);
  writer.close();
  return out;
}

SimulationOutcome cmd_simulate(const ExperimentConfig& cfg, std::ostream& report) {
  SimulationOutcome out = simulate(cfg);
  report << "csv = " << out.csv.string() << '\n'
         << "config_hash = " << cfg.hash() << '\n'
         << "model = " << cfg.nonlinearity().describe() << '\n'
         << "damping = " << cfg.damping_model().describe() << '\n'
         << "rows = " << out.run.rows.size() << '\n'
         << "final_time = " << num(out.run.rows.empty() ? 0.0 : out.run.rows.back().t) << '\n';
  if (!out.run.rows.empty()) {
    report << "E_u_initial = " << num(out.run.rows.front().E_u) << '\n'
           << "E_u_final = " << num(out.run.rows.back().E_u) << '\n'
           << "l2_u_final = " << num(out.run.rows.back().l2_u) << '\n';
  }
  if (!out.psi_note.empty()) report << "psi_note = " << out.psi_note << '\n';
  if (out.run.blow_up) {
    report << "status = blow_up\n";
    throw RunFailed(*out.run.blow_up + " (partial CSV kept at " + out.csv.string() + ")");
  }
  report << "status = ok\n";
  return out;
}

namespace {

SweepEntry sweep_one(const ExperimentConfig& base, int index, const std::string& stem) {
  SweepEntry e;
  e.damping_index = index;
  ExperimentConfig cfg = base;
  cfg.damping = "h" + std::to_string(index);
  try {
    const Grid1D g = cfg.grid();
    const Nonlinearity nl = cfg.nonlinearity();
    const Damping d = cfg.damping_model();
    e.theta = lojasiewicz_theta(nl, first_eigenvalue(g));
    e.admissible = admissible_alpha(d, e.theta);
    e.lambda_sup = theoretical_lambda_sup(e.theta, d.exponent().value_or(0.0));

    SimulateOptions so;
    so.stem = stem + "_h" + std::to_string(index);
    SimulationOutcome out = simulate(cfg, so);
    e.csv = out.csv;
    if (out.run.blow_up) {
      e.status = "blow_up";
      return e;
    }
    if (!out.psi_note.empty()) e.status = "ok_psi_zero_fallback";
    e.classification = classify_longtime(series_from(out.run.rows, false), out.equilibrium_levels);
    if (e.classification->label == LongtimeLabel::ConvergedToEquilibrium) {
      const Series dist = series_from(out.run.rows, true);
      const Window w = default_fit_window(cfg.T);
      try {
        e.polynomial = fit_polynomial_decay(dist, w);
      } catch (const FitError&) {
      }
      const double alpha = d.exponent().value_or(0.0);
      if (alpha < 1.0) {
        try {
          e.stretched = fit_stretched_exponential(dist, alpha, w);
        } catch (const FitError&) {
        }
      }
    }
  } catch (const std::exception& ex) {
    e.status = std::string("error: ") + ex.what();
  }
  return e;
}

std::string summary_text(const std::vector<SweepEntry>& entries) {
  std::ostringstream os;
  os << "damping\tstatus\tclassification\ttail_mean\ttail_ptp\tdetrended_ptp\tglobal_max\t"
        "theta\tadmissible\tlambda_sup\tlambda_fit\tlambda_r2\tstretched_rate\tstretched_r2\n";
  for (const auto& e : entries) {
    os << 'h' << e.damping_index << '\t' << e.status << '\t';
    if (e.classification) {
      const auto& c = *e.classification;
      os << to_string(c.label) << '\t' << num(c.tail_mean) << '\t' << num(c.tail_peak_to_peak)
         << '\t' << num(c.detrended_peak_to_peak) << '\t' << num(c.global_max);
    } else {
      os << "n/a\tn/a\tn/a\tn/a\tn/a";
    }
    os << '\t' << num(e.theta) << '\t' << admissibility_name(e.admissible) << '\t'
       << lambda_sup_text(e.lambda_sup) << '\t';
    if (e.polynomial) {
      os << num(e.polynomial->lambda) << '\t' << num(e.polynomial->r_squared);
    } else {
      os << "n/a\tn/a";
    }
    os << '\t';
    if (e.stretched) {
      os << num(e.stretched->rate) << '\t' << num(e.stretched->r_squared);
    } else {
      os << "n/a\tn/a";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

SweepResult cmd_sweep(const ExperimentConfig& base, const std::vector<int>& dampings,
                      std::ostream& report, int workers, std::string stem) {
  if (stem.empty()) stem = base.nonlinearity().name();
  SweepResult result;
  result.entries.resize(dampings.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < dampings.size(); i = next++) {
      result.entries[i] = sweep_one(base, dampings[i], stem);
    }
  };
  const std::size_t n_threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1,
                              std::max<std::size_t>(dampings.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const std::string text = summary_text(result.entries);
  result.summary = fs::path(base.out_dir) / (stem + "_summary.tsv");
  write_text(result.summary, text);
  report << "summary = " << result.summary.string() << '\n' << text;
  return result;
}

Field parse_guess(const std::string& spec, const ExperimentConfig& cfg, const Grid1D& g) {
  if (spec == "zero") return Field::zeros(g);
  if (spec == "bump") {
    // Flat-interior balance value sqrt(|a|) for Klein-Gordon, unit amplitude otherwise.
    const double amp = cfg.model == "klein_gordon" && cfg.a != 0.0 ? std::sqrt(std::abs(cfg.a)) : 1.0;
    return bump_guess(g, amp);
  }
  if (spec.rfind("bump:", 0) == 0) {
    char* end = nullptr;
    const std::string s = spec.substr(5);
    const double amp = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw ConfigError(ConfigError::Kind::TypeMismatch, "--guess", "bad bump amplitude '" + s + "'");
    }
    return bump_guess(g, amp);
  }
  if (spec.rfind("file:", 0) == 0) return read_field_csv(spec.substr(5), g);
  throw ConfigError(ConfigError::Kind::ConstraintViolation, "--guess",
                    "guess must be zero, bump, bump:<amplitude> or file:<path>");
}

EquilibriumResult cmd_equilibrium(const ExperimentConfig& cfg, const std::string& guess,
                                  std::ostream& report) {
  const Grid1D g = cfg.grid();
  const Nonlinearity nl = cfg.nonlinearity();
  const EquilibriumResult eq = solve_equilibrium(parse_guess(guess, cfg, g), nl, g);
  const fs::path csv = fs::path(cfg.out_dir) / (nl.name() + "_equilibrium.csv");
  write_field_csv(csv, eq.psi, g);
  report << "model = " << nl.describe() << '\n'
         << "guess = " << guess << '\n'
         << "converged = " << (eq.converged ? "true" : "false") << '\n'
         << "iterations = " << eq.iterations << '\n'
         << "residual_hm1 = " << num(eq.residual_hm1) << '\n'
         << "e0 = " << num(eq.e0) << '\n'
         << "l2_norm = " << num(l2_norm(eq.psi, g)) << '\n'
         << "max_abs = " << num(eq.psi.max_abs()) << '\n'
         << "csv = " << csv.string() << '\n';
  if (!eq.converged) throw std::runtime_error("Newton iteration did not converge");
  return eq;
}

LojasiewiczProbe cmd_probe(const ExperimentConfig& cfg, const std::string& guess,
                           std::uint32_t seed, std::ostream& report) {
  const Grid1D g = cfg.grid();
  const Nonlinearity nl = cfg.nonlinearity();
  const EquilibriumResult eq = solve_equilibrium(parse_guess(guess, cfg, g), nl, g);
  if (!eq.converged) throw std::runtime_error("equilibrium for the probe did not converge");

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Field random(g.size());
  for (double& v : random) v = unif(rng);
  const std::vector<Field> dirs{discrete_mode(g, 1), discrete_mode(g, 2), random};
  const LojasiewiczProbe probe = lojasiewicz_probe(eq, nl, g, dirs);

  const double theta = lojasiewicz_theta(nl, first_eigenvalue(g));
  report << "model = " << nl.describe() << '\n'
         << "equilibrium_l2 = " << num(l2_norm(eq.psi, g)) << '\n'
         << "slope = " << num(probe.slope) << '\n'
         << "r_squared = " << num(probe.r_squared) << '\n'
         << "epsilon_min = " << num(probe.epsilon_range.first) << '\n'
         << "epsilon_max = " << num(probe.epsilon_range.second) << '\n'
         << "direction_count = " << probe.direction_count << '\n';
  const char* names[] = {"e1", "e2", "random"};
  for (std::size_t i = 0; i < probe.per_direction.size(); ++i) {
    report << "slope_" << names[i] << " = " << num(probe.per_direction[i].slope) << '\n';
  }
  report << "theta_theory = " << num(theta) << '\n'
         << "expected_slope = " << num(1.0 - theta) << '\n';
  return probe;
}

RateFit cmd_rate_fit(const RateFitRequest& req, std::ostream& report) {
  const CsvTable table = read_csv(req.csv);
  if (table.columns.size() < 2) throw IoError("'" + req.csv.string() + "' needs at least two columns");
  const std::size_t tcol = table.column(table.columns[0] == "t" ? "t" : table.columns[0]);
  std::size_t vcol = 1;
  if (!req.column.empty()) {
    vcol = table.column(req.column);
  } else if (std::find(table.columns.begin(), table.columns.end(), "l2_dist_psi") !=
             table.columns.end()) {
    vcol = table.column("l2_dist_psi");
  }
  Series s;
  for (const auto& row : table.rows) s.push_back({row[tcol], row[vcol]});
  if (s.empty()) throw IoError("'" + req.csv.string() + "' has no data rows");

  RateFit fit;
  if (req.model == "polynomial") {
    fit = fit_polynomial_decay(s, req.window);
    report << "model = polynomial_decay\n"
           << "lambda = " << num(fit.lambda) << '\n'
           << "prefactor = " << num(fit.prefactor) << '\n';
  } else if (req.model == "stretched") {
    fit = fit_stretched_exponential(s, req.alpha, req.window);
    report << "model = stretched_exponential\n"
           << "alpha = " << num(req.alpha) << '\n'
           << "rate = " << num(fit.rate) << '\n'
           << "prefactor = " << num(fit.prefactor) << '\n';
  } else {
    throw ConfigError(ConfigError::Kind::ConstraintViolation, "--model",
                      "model must be polynomial or stretched");
  }
  report << "column = " << table.columns[vcol] << '\n'
         << "r_squared = " << num(fit.r_squared) << '\n'
         << "window_lo = " << num(fit.window.first) << '\n'
         << "window_hi = " << num(fit.window.second) << '\n'
         << "samples = " << fit.samples << '\n';
  if (req.theta) {
    report << "theta = " << num(*req.theta) << '\n'
           << "lambda_sup = " << lambda_sup_text(theoretical_lambda_sup(*req.theta, req.alpha))
           << '\n';
  }
  return fit;
}

OdeOutcome cmd_ode(const ModeODE& mode, const std::optional<fs::path>& csv, std::ostream& report) {
  OdeOutcome out;
  out.samples = integrate_mode(mode);
  if (csv) write_mode_csv(*csv, out.samples);
  Series amp;
  amp.reserve(out.samples.size());
  for (const auto& s : out.samples) amp.push_back({s.t, std::abs(s.omega)});
  out.classification = classify_longtime(amp, {0.0});
  const double e0 = out.samples.front().energy;
  out.energy_ratio = e0 > 0.0 ? out.samples.back().energy / e0 : 0.0;
  report << "mu = " << num(mode.mu) << '\n'
         << "damping = " << mode.damping.describe() << '\n'
         << "steps = " << out.samples.size() - 1 << '\n'
         << "energy_initial = " << num(e0) << '\n'
         << "energy_final = " << num(out.samples.back().energy) << '\n'
         << "energy_ratio = " << num(out.energy_ratio) << '\n'
         << "classification = " << to_string(out.classification.label) << '\n';
  if (csv) report << "csv = " << csv->string() << '\n';
  return out;
}

ExplicitSolutionReport cmd_ode_explicit(double mu, double alpha, const ExperimentConfig& cfg,
                                        std::size_t mode_index, std::ostream& report) {
  const Grid1D g = cfg.grid();
  const ExplicitSolutionReport rep = explicit_solution_check(mu, alpha, g, mode_index);
  report << "mu = " << num(mu) << '\n'
         << "alpha = " << num(alpha) << '\n'
         << "mode_index = " << mode_index << '\n'
         << "mass_b = " << num(rep.b) << '\n'
         << "w0 = " << num(rep.w0) << '\n'
         << "w0_dot = " << num(rep.w0_dot) << '\n'
         << "ode_residual = " << num(rep.ode_residual) << '\n'
         << "pde_residual = " << num(rep.pde_residual) << '\n'
         << "limit_distance_final = " << num(rep.limit_distance.back()) << '\n'
         << "hm1_G_limit = " << num(rep.hm1_G_limit) << '\n'
         << "mu_hm1_mode = " << num(rep.mu_hm1_mode) << '\n'
         << "limit_is_equilibrium = " << (rep.hm1_G_limit > 0.0 ? "false" : "true") << '\n';
  return rep;
}

namespace {

struct Bundle {
  fs::path root;
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const fs::path& file, const std::string& hash) {
    entries.emplace_back(fs::relative(file, root).generic_string(), hash);
  }
  void add_sweep(const SweepResult& sweep, const ExperimentConfig& base) {
    for (const auto& e : sweep.entries) {
      if (e.csv.empty()) continue;
      ExperimentConfig c = base;
      c.damping = "h" + std::to_string(e.damping_index);
      add(e.csv, c.hash());
      const fs::path psi = e.csv.parent_path() / (e.csv.stem().string() + "_psi.csv");
      if (fs::exists(psi)) add(psi, c.hash());
    }
    add(sweep.summary, base.hash());
  }
};

ExperimentConfig with(ExperimentConfig c, const std::string& model, double a, double p, double b,
                      const fs::path& dir) {
  c.model = model;
  c.a = a;
  c.p = p;
  c.b = b;
  c.out_dir = dir.string();
  return c;
}

void write_rate_reports(Bundle& bundle, const SweepResult& sweep, const ExperimentConfig& base,
                        std::ostream& report) {
  const double theta = lojasiewicz_theta(base.nonlinearity(), first_eigenvalue(base.grid()));
  for (const auto& e : sweep.entries) {
    if (!e.classification || e.classification->label != LongtimeLabel::ConvergedToEquilibrium) {
      continue;
    }
    const double alpha = paper_damping(e.damping_index).exponent().value_or(0.0);
    const fs::path out = e.csv.parent_path() / (e.csv.stem().string() + "_rates.txt");
    std::ostringstream text;
    RateFitRequest req;
    req.csv = e.csv;
    req.window = default_fit_window(base.T);
    req.theta = theta;
    req.alpha = alpha;
    try {
      req.model = "polynomial";
      cmd_rate_fit(req, text);
      if (alpha < 1.0) {
        text << "\n";
        req.model = "stretched";
        cmd_rate_fit(req, text);
      }
    } catch (const FitError& ex) {
      text << "fit_error = " << ex.what() << '\n';
    }
    write_text(out, text.str());
    ExperimentConfig c = base;
    c.damping = "h" + std::to_string(e.damping_index);
    bundle.add(out, c.hash());
    report << "rates = " << out.string() << '\n';
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> cmd_reproduce(const std::string& figure,
                                                               const ExperimentConfig& base,
                                                               std::ostream& report, int workers) {
  Bundle bundle;
  bundle.root = fs::path(base.out_dir) / figure;
  fs::create_directories(bundle.root);
  const std::vector<int> all{0, 1, 2, 3, 4, 5, 6};

  if (figure == "fig1") {
    for (const auto& cfg0 : {with(base, "sine_gordon", base.a, base.p, 1.0, bundle.root),
                             with(base, "klein_gordon", 1.0, 3.0, base.b, bundle.root)}) {
      ExperimentConfig cfg = cfg0;
      cfg.damping = "h0";
      SimulateOptions so;
      so.snapshot_every = 2.0;
      const SimulationOutcome out = simulate(cfg, so);
      if (out.run.blow_up) throw RunFailed(*out.run.blow_up);
      bundle.add(out.csv, cfg.hash());
      bundle.add(out.csv.parent_path() / (out.csv.stem().string() + "_snapshots.csv"), cfg.hash());
      report << "csv = " << out.csv.string() << '\n';
    }
  } else if (figure == "fig2") {
    const ExperimentConfig sg = with(base, "sine_gordon", base.a, base.p, 1.0, bundle.root);
    const ExperimentConfig kg = with(base, "klein_gordon", 1.0, 3.0, base.b, bundle.root);
    bundle.add_sweep(cmd_sweep(sg, all, report, workers), sg);
    bundle.add_sweep(cmd_sweep(kg, all, report, workers), kg);
  } else if (figure == "fig3") {
    // Panel a: h2 with theta = 1/2 (a = 1) against theta = 1/4 (a = -0.1).
    const fs::path dir_a = bundle.root / "panel_a";
    for (const auto& [a, stem] : {std::pair{1.0, std::string("klein_gordon_a1")},
                                  std::pair{-0.1, std::string("klein_gordon_am0.1")}}) {
      ExperimentConfig cfg = with(base, "klein_gordon", a, 3.0, base.b, dir_a);
      cfg.psi_source = "newton-from-final";
      const SweepResult sweep = cmd_sweep(cfg, {2}, report, 1, stem);
      bundle.add_sweep(sweep, cfg);
      write_rate_reports(bundle, sweep, cfg, report);
    }
    // Panel b: a = -0.1, p = 3 over all seven dampings.
    ExperimentConfig cfg = with(base, "klein_gordon", -0.1, 3.0, base.b, bundle.root / "panel_b");
    cfg.psi_source = "newton-from-final";
    const SweepResult sweep = cmd_sweep(cfg, all, report, workers);
    bundle.add_sweep(sweep, cfg);
    write_rate_reports(bundle, sweep, cfg, report);
  } else {
    throw ConfigError(ConfigError::Kind::ConstraintViolation, "figure",
                      "figure must be fig1, fig2 or fig3");
  }

  std::ostringstream manifest;
  for (const auto& [file, hash] : bundle.entries) manifest << file << '\t' << hash << '\n';
  write_text(bundle.root / "manifest.tsv", manifest.str());
  report << "manifest = " << (bundle.root / "manifest.tsv").string() << '\n'
         << "artifacts = " << bundle.entries.size() << '\n';
  return bundle.entries;
}

}  // namespace dampedwave::app
