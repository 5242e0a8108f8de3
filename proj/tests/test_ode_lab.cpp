#include <doctest.h>

#include <cmath>

#include "dampedwave/diagnostics.hpp"
#include "dampedwave/ode_lab.hpp"

using namespace dampedwave;

namespace {

double at_final(const ModeODE& m) { return integrate_mode(m).back().omega; }

double tail_amplitude(const std::vector<ModeSample>& s, double t_from) {
  double a = 0.0;
  for (const auto& p : s) {
    if (p.t >= t_from) a = std::max(a, std::abs(p.omega));
  }
  return a;
}

}  // namespace

TEST_CASE("constant-coefficient closed forms") {
  const double T = 10.0;
  // Underdamped: roots -1/2 +- i/2.
  CHECK(std::abs(at_final({0.5, ConstantDamping{1.0}, 1.0, 0.0, 0.01, T}) -
                 std::exp(-T / 2) * (std::cos(T / 2) + std::sin(T / 2))) <= 1e-8);
  // Critically damped: (1 + t) e^{-t}.
  CHECK(std::abs(at_final({1.0, ConstantDamping{2.0}, 1.0, 0.0, 0.01, T}) - (1 + T) * std::exp(-T)) <= 1e-8);
  // Overdamped: roots -1, -2.
  CHECK(std::abs(at_final({2.0, ConstantDamping{3.0}, 1.0, 0.0, 0.01, T}) -
                 (2 * std::exp(-T) - std::exp(-2 * T))) <= 1e-8);
  // Harmonic. RK4 phase error grows like omega T (omega dt)^4 / 120, which is
  // 2.7e-8 at omega = 2, T = 10; the 1e-8 check runs over two time units.
  CHECK(std::abs(at_final({4.0, Damping{}, 1.0, 0.0, 0.01, 2.0}) - std::cos(4.0)) <= 1e-8);
  CHECK(std::abs(at_final({4.0, Damping{}, 1.0, 0.0, 0.01, T}) - std::cos(2 * T)) <= 5e-8);
}

TEST_CASE("sample layout") {
  const auto s = integrate_mode({1.0, Damping{}, 1.0, 0.0, 0.01, 1.0});
  CHECK(s.size() == 101);
  CHECK(s.front().t == 0.0);
  CHECK(s.back().t == doctest::Approx(1.0));
  CHECK(s.front().energy == doctest::Approx(0.5));
}

TEST_CASE("integrable damping leaves the oscillation alive") {
  const auto s = integrate_mode({1.0, PowerDecay{1.0, 2.0}, 1.0, 0.0, 0.01, 200.0});
  CHECK(tail_amplitude(s, 150.0) >= 0.5);
  CHECK(s.back().energy >= 0.1 * s.front().energy);
}

TEST_CASE("admissible decaying damping drains the energy") {
  for (double alpha : {0.0, 0.5, 0.9}) {
    CAPTURE(alpha);
    const auto s = integrate_mode({1.0, PowerDecay{1.0, alpha}, 1.0, 0.0, 0.01, 200.0});
    CHECK(s.back().energy <= 1e-2 * s.front().energy);
  }
}

TEST_CASE("constructed damping") {
  const Damping h = remark_two_damping(1.0, -2.0);
  CHECK(h(0.0) == doctest::Approx(4.0).epsilon(1e-15));
  for (double mu : {0.3, 1.0, 5.0}) {
    for (double alpha : {-1.5, -2.0, -3.7}) {
      const Damping d = remark_two_damping(mu, alpha);
      const ExplicitMode w{mu, alpha};
      CHECK(w.w(0.0) == doctest::Approx(1 - mu / (1 + alpha)).epsilon(1e-15));
      CHECK(w.w_dot(0.0) == doctest::Approx(-mu).epsilon(1e-15));
      for (double t = 0.0; t <= 200.0; t += 0.5) CHECK(d(t) > 0.0);
      for (int i = 0; i < 50; ++i) {
        const double t = 100.0 * i / 49.0;
        CHECK(std::abs(w.w_ddot(t) + d(t) * w.w_dot(t) + mu * w.w(t)) <= 1e-10);
      }
      CHECK(std::abs(w.w(1e12) - 1.0) < 1e-3);
    }
  }
  CHECK_THROWS(remark_two_damping(1.0, -1.0));
  CHECK_THROWS(remark_two_damping(0.0, -2.0));
}

TEST_CASE("the integrator reproduces the explicit solution") {
  const double mu = 1.0, alpha = -2.0;
  const ExplicitMode w{mu, alpha};
  // h grows like (t+1)^2 here, so explicit RK4 at dt = 0.01 is stable only up to t ~ 15.
  const auto s = integrate_mode({mu, remark_two_damping(mu, alpha), w.w(0), w.w_dot(0), 0.01, 10.0});
  for (std::size_t i = 0; i < s.size(); i += 100) CHECK(std::abs(s[i].omega - w.w(s[i].t)) <= 1e-6);
}

TEST_CASE("explicit non-convergent solution") {
  const Grid1D g = Grid1D::from_spacing(20.0, 0.1);
  const auto r = explicit_solution_check(1.0, -2.0, g, 1);
  CHECK(r.ode_residual <= 1e-10);
  CHECK(r.pde_residual <= 1e-10);
  CHECK(r.w0 == doctest::Approx(2.0));
  CHECK(r.w0_dot == doctest::Approx(-1.0));
  CHECK(r.b == doctest::Approx(1.0 - first_eigenvalue(g)).epsilon(1e-14));
  REQUIRE(r.limit_distance.size() == 50);
  for (std::size_t i = 1; i < r.limit_distance.size(); ++i) {
    CHECK(r.limit_distance[i] < r.limit_distance[i - 1]);
  }
  CHECK(r.limit_distance.back() < 0.05 * r.limit_distance.front());
  CHECK(r.hm1_G_limit > 0.0);
  CHECK(r.hm1_G_limit == doctest::Approx(r.mu_hm1_mode).epsilon(1e-10));
  CHECK_THROWS(explicit_solution_check(1.0, -2.0, g, 0));
  CHECK_THROWS(explicit_solution_check(1.0, -2.0, g, g.size() + 1));
}
