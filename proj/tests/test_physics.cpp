#include <doctest.h>

#include <cmath>
#include <random>

#include "dampedwave/grid.hpp"
#include "dampedwave/physics.hpp"

using namespace dampedwave;

namespace {

std::vector<Nonlinearity> models() {
  return {SineGordon{1.0}, SineGordon{2.5}, KleinGordon{1.0, 3.0}, KleinGordon{-0.1, 3.0},
          KleinGordon{0.5, 2.5}, LinearMass{1.0}, LinearMass{-0.3}};
}

}  // namespace

TEST_CASE("potential is an antiderivative of f") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  const double eps = 1e-4;
  for (const auto& nl : models()) {
    CAPTURE(nl.describe());
    CHECK(nl.potential(0.0) == 0.0);
    CHECK(nl.f(0.0) == 0.0);
    for (int i = 0; i < 100; ++i) {
      const double s = dist(rng);
      const double fd = (nl.potential(s + eps) - nl.potential(s - eps)) / (2 * eps);
      CHECK(fd == doctest::Approx(nl.f(s)).epsilon(1e-6).scale(1.0));
      const double dfd = (nl.f(s + eps) - nl.f(s - eps)) / (2 * eps);
      CHECK(dfd == doctest::Approx(nl.df(s)).epsilon(1e-6).scale(1.0));
      CHECK(nl.f(-s) == -nl.f(s));
    }
  }
}

TEST_CASE("closed forms of f and F") {
  const Nonlinearity sg = SineGordon{2.0};
  CHECK(sg.f(1.0) == doctest::Approx(2.0 * std::sin(1.0)));
  CHECK(sg.potential(1.0) == doctest::Approx(2.0 * (1 - std::cos(1.0))));
  const Nonlinearity kg = KleinGordon{1.0, 3.0};
  CHECK(kg.f(2.0) == doctest::Approx(2.0 + 8.0));
  CHECK(kg.potential(2.0) == doctest::Approx(2.0 + 4.0));
  const Nonlinearity frac = KleinGordon{0.0, 2.5};
  CHECK(frac.f(-4.0) == doctest::Approx(-32.0));
  CHECK(sg.name() == "sine_gordon");
  CHECK(kg.name() == "klein_gordon");
  CHECK(Nonlinearity(LinearMass{1}).name() == "linear_mass");
  CHECK_THROWS(Nonlinearity(SineGordon{0.0}));
  CHECK_THROWS(Nonlinearity(KleinGordon{1.0, 0.5}));
}

TEST_CASE("preset dampings h0 to h6") {
  for (double t : {0.0, 1.0, 50.0}) CHECK(paper_damping(0)(t) == 0.0);
  CHECK(paper_damping(1)(7.0) == 1.0);
  CHECK(paper_damping(2)(3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(paper_damping(3)(3.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(paper_damping(4)(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(paper_damping(5)(4.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(paper_damping(6)(4.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK_THROWS(paper_damping(7));
  CHECK_THROWS(paper_damping(-1));
  for (int i = 0; i <= 6; ++i) {
    const Damping d = paper_damping(i);
    for (double t = 0.0; t <= 200.0; t += 0.5) CHECK(d(t) >= 0.0);
  }
  CHECK(paper_damping(0).exponent() == 0.0);
  CHECK(paper_damping(1).exponent() == 0.0);
  CHECK(paper_damping(3).exponent() == 1.0);
  CHECK(paper_damping(6).exponent() == 1.5);
  CHECK_FALSE(Damping(RemarkTwoDamping{1.0, -2.0}).exponent().has_value());
}

TEST_CASE("lojasiewicz exponent") {
  const double mu0 = first_eigenvalue(Grid1D::from_spacing(20.0, 0.1));
  CHECK(lojasiewicz_theta(SineGordon{1.0}, mu0) == 0.5);
  CHECK(lojasiewicz_theta(KleinGordon{1.0, 3.0}, 0.00617) == 0.5);
  CHECK(lojasiewicz_theta(KleinGordon{-0.1, 3.0}, 0.00617) == 0.25);
  CHECK(lojasiewicz_theta(KleinGordon{-0.1, 3.0}, mu0) == 0.25);
  CHECK(lojasiewicz_theta(KleinGordon{-0.001, 3.0}, mu0) == 0.5);
  CHECK(lojasiewicz_theta(LinearMass{1.0}, mu0) == 0.5);
  CHECK_THROWS(lojasiewicz_theta(SineGordon{1.0}, 0.0));
}

TEST_CASE("admissible damping exponents") {
  CHECK(admissible_alpha(paper_damping(2), 0.5) == Admissibility::Admissible);
  CHECK(admissible_alpha(paper_damping(3), 0.5) == Admissibility::NotAdmissible);
  CHECK(admissible_alpha(paper_damping(2), 0.25) == Admissibility::NotAdmissible);
  CHECK(admissible_alpha(paper_damping(0), 0.25) == Admissibility::Admissible);
  CHECK(admissible_alpha(paper_damping(1), 0.5) == Admissibility::Admissible);
  CHECK(admissible_alpha(paper_damping(5), 0.5) == Admissibility::NotAdmissible);
  CHECK(admissible_alpha(paper_damping(6), 0.5) == Admissibility::NotAdmissible);
  CHECK(admissible_alpha(Damping(RemarkTwoDamping{1.0, -2.0}), 0.5) ==
        Admissibility::NotApplicable);
}

TEST_CASE("initial profile") {
  const Grid1D g = Grid1D::from_spacing(20.0, 0.1);
  const auto [u0, u1] = initial_profile(g, 0.2);
  for (double v : u0) CHECK(v == 0.0);
  CHECK(u1[199] == doctest::Approx(4 * std::sqrt(0.96)).epsilon(1e-12));
  CHECK(4 * std::sqrt(0.96) == doctest::Approx(3.919184).epsilon(1e-6));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(u1[i] == doctest::Approx(u1[g.size() - 1 - i]).epsilon(1e-12));
  }
  CHECK_THROWS(initial_profile(g, 0.0));
  CHECK_THROWS(initial_profile(g, 1.0));
}
