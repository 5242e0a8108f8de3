#include "dampedwave/integrator.hpp"

#include <cmath>

namespace dampedwave {

std::size_t SchemeConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

void SchemeConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_final >= dt)) throw std::invalid_argument("t_final must be at least dt");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw std::invalid_argument("cfl_safety must lie in (0, 1]");
  }
}

bool cfl_check(const SchemeConfig& cfg, const Grid1D& g) { return cfg.dt <= cfg.cfl_safety * g.dx(); }

namespace {

void require_finite(const Field& u, double last_valid_time) {
  for (double v : u) {
    if (!std::isfinite(v) || std::abs(v) > kBlowUpThreshold) {
      throw BlowUp("solution blew up after t = " + std::to_string(last_valid_time),
                   last_valid_time);
    }
  }
}

}  // namespace

WaveState bootstrap(const Field& u0, const Field& v0, const Nonlinearity& nl, const Damping& d,
                    const Grid1D& g, const SchemeConfig& cfg) {
  cfg.validate();
  require_on_grid(u0, g);
  require_on_grid(v0, g);
  if (!cfl_check(cfg, g)) throw std::invalid_argument("time step violates the CFL bound dt <= dx");

  const double dt = cfg.dt;
  const double h0 = d(0.0);
  const Field lap = laplacian(u0, g);
  Field u1(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    const double accel = lap[i] - h0 * v0[i] - nl.f(u0[i]);
    u1[i] = u0[i] + dt * v0[i] + 0.5 * dt * dt * accel;
  }
  require_finite(u1, 0.0);
  return WaveState{u0, std::move(u1), 1, dt};
}

WaveState step(const WaveState& s, const Nonlinearity& nl, const Damping& d, const Grid1D& g) {
  require_on_grid(s.u_curr, g);
  require_on_grid(s.u_prev, g);
  const double dt = s.dt;
  const double t = s.time();
  const double half_hdt = 0.5 * d(t) * dt;
  const double inv_den = 1.0 / (1.0 + half_hdt);
  const double dt2 = dt * dt;
  const double inv_dx2 = 1.0 / (g.dx() * g.dx());

  const Field& u = s.u_curr;
  const Field& um = s.u_prev;
  const std::size_t n = u.size();
  Field next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? u[i - 1] : 0.0;
    const double right = i + 1 < n ? u[i + 1] : 0.0;
    const double lap = (left - 2.0 * u[i] + right) * inv_dx2;
    next[i] = (2.0 * u[i] - (1.0 - half_hdt) * um[i] + dt2 * (lap - nl.f(u[i]))) * inv_den;
  }
  require_finite(next, t);
  return WaveState{u, std::move(next), s.step_index + 1, dt};
}

Field velocity(const WaveState& s, const WaveState& next) {
  Field v = next.u_curr - s.u_prev;
  v *= 1.0 / (2.0 * s.dt);
  return v;
}

RunResult run(const Field& u0, const Field& v0, const Nonlinearity& nl, const Damping& d,
              const Grid1D& g, const SchemeConfig& cfg, const RunOptions& opts) {
  if (opts.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  const std::size_t n_steps = cfg.steps();
  const Field* psi = opts.psi ? &*opts.psi : nullptr;
  if (psi) require_on_grid(*psi, g);

  RunResult result;
  auto record = [&](double t, const Field& u, const Field& ut, bool one_sided) {
    DiagnosticsRow row = make_row(t, u, ut, nl, d, g, psi, opts.eta);
    row.one_sided_velocity = one_sided;
    result.rows.push_back(row);
    if (opts.on_record) opts.on_record(t, u);
  };

  record(0.0, u0, v0, false);
  result.final_u = u0;
  result.final_ut = v0;

  std::optional<WaveState> state;
  try {
    state = bootstrap(u0, v0, nl, d, g, cfg);
    for (std::size_t n = 1; n <= n_steps; ++n) {
      const double t = state->time();
      const bool due = n % opts.record_every == 0 || n == n_steps;
      if (n == n_steps) {
        Field ut = state->u_curr - state->u_prev;
        ut *= 1.0 / state->dt;
        if (due) record(t, state->u_curr, ut, true);
        result.final_u = state->u_curr;
        result.final_ut = std::move(ut);
        result.final_time = t;
        break;
      }
      WaveState next = step(*state, nl, d, g);
      if (due) record(t, state->u_curr, velocity(*state, next), false);
      state = std::move(next);
    }
  } catch (const BlowUp& e) {
    result.blow_up = e.what();
    if (state) {
      result.final_u = state->u_curr;
      result.final_ut = state->u_curr - state->u_prev;
      result.final_ut *= 1.0 / state->dt;
      result.final_time = state->time();
    }
  }
  fill_dissipation_residuals(result.rows, d);
  return result;
}

}  // namespace dampedwave
