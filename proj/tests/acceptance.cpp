// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <unistd.h>

#include "dampedwave/app/commands.hpp"
#include "dampedwave/app/config.hpp"
#include "dampedwave/app/csv_io.hpp"
#include "dampedwave/equilibria.hpp"
#include "dampedwave/integrator.hpp"
#include "dampedwave/ode_lab.hpp"
#include "dampedwave/rates.hpp"
#include "oracles.hpp"

using namespace dampedwave;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAILED]");
  }
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

fs::path scratch_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("dampedwave_acceptance_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

app::ExperimentConfig preset(const std::string& text, const fs::path& out) {
  auto cfg = app::parse_config(text);
  cfg.out_dir = out.string();
  return cfg;
}

// ---------------------------------------------------------------------------

Verdict scheme_order() {
  Verdict v;
  // u = cos(w t) sin(pi (x+L)/2L), w^2 = pi^2/4L^2 + b, is an exact solution.
  const double L = 1.0, b = 1.0, T = 1.0;
  const double w = std::sqrt(std::numbers::pi * std::numbers::pi / (4 * L * L) + b);
  std::vector<double> errs;
  for (double dx : {0.1, 0.05, 0.025, 0.0125}) {
    const Grid1D g = Grid1D::from_spacing(L, dx);
    const Field phi = sample(g, [L](double x) { return std::sin(std::numbers::pi * (x + L) / (2 * L)); });
    RunOptions opts;
    opts.record_every = 100000;
    const auto r = run(phi, Field::zeros(g), LinearMass{b}, Damping{}, g, {dx / 2, T, 1.0}, opts);
    errs.push_back((r.final_u - std::cos(w * T) * phi).max_abs());
  }
  double worst = 1e300;
  std::string orders;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double o = std::log2(errs[i - 1] / errs[i]);
    worst = std::min(worst, o);
    orders += (i > 1 ? "," : "") + fmt("%.3f", o);
  }
  v.require(worst >= 1.9, "orders " + orders + " (min >= 1.9)");

  // The discrete mode follows the closed-form recurrence solution exactly.
  const Grid1D g = Grid1D::from_spacing(20.0, 0.1);
  const double dt = 0.05, lam = first_eigenvalue(g);
  const double wt = (2 / dt) * std::asin(dt * std::sqrt(lam + b) / 2);
  const Field e1 = discrete_mode(g, 1);
  WaveState s = bootstrap(e1, Field::zeros(g), LinearMass{b}, Damping{}, g, {dt, 10.0, 1.0});
  for (int n = 1; n < 100; ++n) s = step(s, LinearMass{b}, Damping{}, g);
  const double amp = std::cos(wt * 100 * dt);
  const double rel = (s.u_curr - amp * e1).max_abs() / std::abs(amp);
  v.require(rel <= 1e-8, "discrete closed form rel err " + fmt("%.2e", rel));
  return v;
}

Verdict conservation() {
  Verdict v;
  const auto cfg = app::parse_config("");
  const Grid1D g = cfg.grid();
  const auto [u0, v0] = initial_profile(g, cfg.c);
  const auto r = run(u0, v0, cfg.nonlinearity(), cfg.damping_model(), g, cfg.scheme());
  v.require(!r.blow_up && r.final_time >= 200.0 - 1e-9, "reached t = " + fmt("%.1f", r.final_time));
  const double e0 = r.rows.front().E_u;
  double drift = 0.0, gmax = 0.0, tmax = 0.0;
  const double tail_start = 0.75 * r.final_time;
  for (const auto& row : r.rows) {
    drift = std::max(drift, std::abs(row.E_u - e0) / e0);
    gmax = std::max(gmax, row.l2_u);
    if (row.t >= tail_start) tmax = std::max(tmax, row.l2_u);
  }
  v.require(drift <= 0.01, "max rel energy drift " + fmt("%.2e", drift));
  v.require(tmax >= 0.5 * gmax, "tail max / global max " + fmt("%.3f", tmax / gmax));
  return v;
}

Verdict dissipation() {
  Verdict v;
  for (int i : {1, 2}) {
    const auto cfg = app::parse_config("damping = h" + std::to_string(i) + "\n");
    const Grid1D g = cfg.grid();
    const auto [u0, v0] = initial_profile(g, cfg.c);
    const auto r = run(u0, v0, cfg.nonlinearity(), cfg.damping_model(), g, cfg.scheme());
    double worst = -1e300;
    for (std::size_t k = 1; k < r.rows.size(); ++k) worst = std::max(worst, r.rows[k].E_u - r.rows[k - 1].E_u);
    v.require(worst <= 1e-6, "h" + std::to_string(i) + " max dE " + fmt("%.2e", worst));
  }
  const Grid1D g = Grid1D::from_spacing(20.0, 0.1);
  const Field e1 = (1.0 / l2_norm(discrete_mode(g, 1), g)) * discrete_mode(g, 1);
  std::vector<double> worst;
  for (double dt : {0.05, 0.025, 0.0125}) {
    RunOptions opts;
    opts.record_every = 1;
    const auto r = run(e1, Field::zeros(g), LinearMass{0.5}, paper_damping(1), g, {dt, 10.0, 1.0}, opts);
    double m = 0.0;
    for (std::size_t k = 1; k + 1 < r.rows.size(); ++k) m = std::max(m, r.rows[k].dissipation_residual);
    worst.push_back(m);
  }
  const double o1 = std::log2(worst[0] / worst[1]), o2 = std::log2(worst[1] / worst[2]);
  v.require(std::min(o1, o2) >= 1.9, "residual orders " + fmt("%.3f", o1) + "," + fmt("%.3f", o2));
  return v;
}

Verdict classification() {
  Verdict v;
  const fs::path dir = scratch_dir("sweep");
  const char* expected[] = {"oscillating", "converged", "converged", "oscillating",
                            "converged",   "converged", "non_equilibrium_plateau"};
  for (const std::string model : {"model = sine_gordon\nb = 1\n", "model = klein_gordon\na = 1\np = 3\n"}) {
    std::ostringstream report;
    const auto cfg = preset(model, dir);
    const auto r = app::cmd_sweep(cfg, {0, 1, 2, 3, 4, 5, 6}, report);
    std::string labels;
    bool ok = r.entries.size() == 7;
    for (const auto& e : r.entries) {
      const std::string got = e.classification ? to_string(e.classification->label) : e.status;
      ok = ok && got == expected[e.damping_index];
      labels += (labels.empty() ? "" : ",") + got;
    }
    v.require(ok, cfg.nonlinearity().name() + " [" + labels + "]");
  }
  fs::remove_all(dir);
  return v;
}

Verdict lojasiewicz() {
  Verdict v;
  const Grid1D g = Grid1D::from_spacing(20.0, 0.1);
  const std::vector<Field> dirs{discrete_mode(g, 1), discrete_mode(g, 2),
                                Field(oracle::random_vector(g.size(), 2024))};
  for (const Nonlinearity& nl : {Nonlinearity(SineGordon{1}), Nonlinearity(KleinGordon{1, 3})}) {
    const auto eq = solve_equilibrium(Field::zeros(g), nl, g);
    const auto p = lojasiewicz_probe(eq, nl, g, dirs);
    v.require(std::abs(p.slope - 0.5) <= 0.05 && p.r_squared >= 0.99,
              nl.name() + " slope " + fmt("%.4f", p.slope) + " R2 " + fmt("%.6f", p.r_squared));
  }
  return v;
}

Verdict rate_laws() {
  Verdict v;
  {
    const auto cfg = app::parse_config("damping = h2\n");
    const Grid1D g = cfg.grid();
    const auto [u0, v0] = initial_profile(g, cfg.c);
    const auto r = run(u0, v0, cfg.nonlinearity(), cfg.damping_model(), g, cfg.scheme());
    Series s;
    for (const auto& row : r.rows) s.push_back({row.t, row.l2_u});
    const auto fit = fit_stretched_exponential(s, 0.5, std::pair{50.0, 200.0});
    v.require(fit.r_squared >= 0.9 && fit.rate > 0,
              "SG h2 stretched c " + fmt("%.4f", fit.rate) + " R2 " + fmt("%.4f", fit.r_squared));
  }
  {
    const fs::path dir = scratch_dir("rates");
    auto cfg = preset("model = klein_gordon\na = -0.1\np = 3\ndamping = h1\npsi_source = newton-from-final\n", dir);
    const auto out = app::simulate(cfg);
    v.require(out.psi_note.empty() && l2_norm(out.psi, cfg.grid()) > 0.1,
              "psi |.| " + fmt("%.5f", l2_norm(out.psi, cfg.grid())));
    std::ostringstream report;
    app::RateFitRequest req;
    req.csv = out.csv;
    req.window = std::pair{50.0, 200.0};
    req.column = "l2_dist_psi";
    req.theta = 0.25;
    const auto fit = app::cmd_rate_fit(req, report);
    const bool sup_printed = report.str().find("lambda_sup = " + app::format_number(0.5)) != std::string::npos;
    v.require(fit.lambda > 0, "KG h1 lambda " + fmt("%.3f", fit.lambda));
    v.require(sup_printed, "report prints lambda_sup = 0.5");
    fs::remove_all(dir);
  }
  return v;
}

Verdict ode_oscillation() {
  Verdict v;
  const auto kept = integrate_mode({1.0, PowerDecay{1.0, 2.0}, 1.0, 0.0, 0.01, 200.0});
  const double r1 = kept.back().energy / kept.front().energy;
  v.require(r1 >= 0.1, "alpha=2 energy ratio " + fmt("%.4f", r1));
  const auto drained = integrate_mode({1.0, PowerDecay{1.0, 0.5}, 1.0, 0.0, 0.01, 200.0});
  const double r2 = drained.back().energy / drained.front().energy;
  v.require(r2 < 1e-2, "alpha=1/2 energy ratio " + fmt("%.2e", r2));
  return v;
}

Verdict explicit_solution() {
  Verdict v;
  const Grid1D g = Grid1D::from_spacing(20.0, 0.1);
  const auto r = explicit_solution_check(1.0, -2.0, g, 1);
  v.require(r.ode_residual <= 1e-10, "ode residual " + fmt("%.2e", r.ode_residual));
  v.require(r.pde_residual <= 1e-10, "pde residual " + fmt("%.2e", r.pde_residual));
  const bool equal = std::abs(r.hm1_G_limit - r.mu_hm1_mode) <= 1e-10 * r.mu_hm1_mode;
  v.require(equal && r.hm1_G_limit > 0,
            "|G(e_k)| " + fmt("%.6f", r.hm1_G_limit) + " = mu |e_k| " + fmt("%.6f", r.mu_hm1_mode));
  return v;
}

Verdict equilibrium() {
  Verdict v;
  const Grid1D g = Grid1D::from_spacing(20.0, 0.1);
  const Nonlinearity nl = KleinGordon{-0.1, 3.0};
  const auto r = solve_equilibrium(bump_guess(g, 0.3), nl, g);
  const double res = hm1_norm(G_residual(r.psi, nl, g), g);
  v.require(r.converged && res <= 1e-10, "residual " + fmt("%.2e", res));

  const double plateau = std::sqrt(0.1);
  const double shoot = oracle::kg_plateau_by_shooting(-0.1, 20.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.x(i)) <= 10.0) worst = std::max(worst, std::abs(r.psi[i] - plateau) / plateau);
  }
  v.require(worst <= 0.05, "plateau dev " + fmt("%.4f", worst));
  const double vs_shoot = std::abs(r.psi[g.size() / 2] - shoot) / shoot;
  v.require(vs_shoot <= 0.05 && std::abs(shoot - plateau) <= 0.05 * plateau,
            "psi(0) " + fmt("%.6f", r.psi[g.size() / 2]) + " vs shooting " + fmt("%.6f", shoot));

  const auto& h = r.residual_history;
  bool quad = h.size() >= 4 && h[h.size() - 2] < 1e-3;
  std::string cs;
  if (h.size() >= 4) {
    double cmin = 1e300, cmax = 0.0;
    for (std::size_t k = h.size() - 3; k + 1 < h.size(); ++k) {
      const double c = h[k + 1] / (h[k] * h[k]);
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
      cs += (cs.empty() ? "" : ",") + fmt("%.3f", c);
    }
    quad = quad && cmax < 10.0 && cmax / cmin < 10.0;
  }
  v.require(quad, "contraction constants " + cs);
  return v;
}

Verdict determinism() {
  Verdict v;
  const fs::path dir = scratch_dir("det");
  std::ostringstream report;
  const auto cfg = preset("damping = h2\n", dir);
  const auto first = app::cmd_simulate(cfg, report);
  const std::string a = slurp(first.csv);
  const auto second = app::cmd_simulate(cfg, report);
  const std::string b = slurp(second.csv);
  v.require(!a.empty() && a == b, std::to_string(a.size()) + " bytes identical");
  fs::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  ///< 0: no runtime limit
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {1, "scheme convergence order", 1.0, scheme_order},
      {2, "energy conservation without damping", 5.0, conservation},
      {3, "dissipation identity", 0.0, dissipation},
      {4, "long-time classification sweep", 120.0, classification},
      {5, "lojasiewicz probe slope", 1.0, lojasiewicz},
      {6, "rate-law consistency", 0.0, rate_laws},
      {7, "single-mode oscillation", 0.0, ode_oscillation},
      {8, "explicit non-convergent solution", 0.0, explicit_solution},
      {9, "equilibrium solver", 0.0, equilibrium},
      {10, "determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) {
      v.require(secs < c.budget_s, "runtime " + fmt("%.2f", secs) + " s < " + fmt("%g", c.budget_s) + " s");
    } else {
      v.require(true, "runtime " + fmt("%.2f", secs) + " s");
    }
    if (!v.pass) ++failures;
    std::printf("[%s] criterion %d: %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
