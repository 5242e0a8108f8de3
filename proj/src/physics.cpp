#include "dampedwave/physics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dampedwave {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double signed_power(double s, double p) { return std::copysign(std::pow(std::abs(s), p), s); }

std::string fmt_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Nonlinearity::Nonlinearity(SineGordon m) : model_(m) {
  if (!(m.b > 0.0)) throw std::invalid_argument("sine-Gordon coefficient b must be positive");
}

Nonlinearity::Nonlinearity(KleinGordon m) : model_(m) {
  if (!(m.p >= 1.0)) throw std::invalid_argument("Klein-Gordon exponent p must be >= 1");
  if (!std::isfinite(m.a)) throw std::invalid_argument("Klein-Gordon coefficient a must be finite");
}

Nonlinearity::Nonlinearity(LinearMass m) : model_(m) {
  if (!std::isfinite(m.b)) throw std::invalid_argument("mass coefficient b must be finite");
}

double Nonlinearity::f(double s) const {
  return std::visit(overloaded{
                        [s](const SineGordon& m) { return m.b * std::sin(s); },
                        [s](const KleinGordon& m) { return m.a * s + signed_power(s, m.p); },
                        [s](const LinearMass& m) { return m.b * s; },
                    },
                    model_);
}

double Nonlinearity::df(double s) const {
  return std::visit(overloaded{
                        [s](const SineGordon& m) { return m.b * std::cos(s); },
                        [s](const KleinGordon& m) {
                          // d/ds |s|^{p-1} s = p |s|^{p-1}; at p = 1 this is 1 everywhere.
                          return m.a + m.p * std::pow(std::abs(s), m.p - 1.0);
                        },
                        [](const LinearMass& m) { return m.b; },
                    },
                    model_);
}

double Nonlinearity::potential(double s) const {
  return std::visit(overloaded{
                        [s](const SineGordon& m) {
                          // 1 - cos s = 2 sin^2(s/2)
                          const double h = std::sin(0.5 * s);
                          return 2.0 * m.b * h * h;
                        },
                        [s](const KleinGordon& m) {
                          return 0.5 * m.a * s * s + std::pow(std::abs(s), m.p + 1.0) / (m.p + 1.0);
                        },
                        [s](const LinearMass& m) { return 0.5 * m.b * s * s; },
                    },
                    model_);
}

Field Nonlinearity::apply(const Field& v) const {
  Field out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f(v[i]);
  return out;
}

std::string Nonlinearity::name() const {
  return std::visit(overloaded{
                        [](const SineGordon&) { return std::string("sine_gordon"); },
                        [](const KleinGordon&) { return std::string("klein_gordon"); },
                        [](const LinearMass&) { return std::string("linear_mass"); },
                    },
                    model_);
}

std::string Nonlinearity::describe() const {
  return std::visit(
      overloaded{
          [](const SineGordon& m) { return "sine_gordon(b=" + fmt_number(m.b) + ")"; },
          [](const KleinGordon& m) {
            return "klein_gordon(a=" + fmt_number(m.a) + ", p=" + fmt_number(m.p) + ")";
          },
          [](const LinearMass& m) { return "linear_mass(b=" + fmt_number(m.b) + ")"; },
      },
      model_);
}

Damping::Damping(ConstantDamping m) : model_(m) {
  if (!(m.c >= 0.0)) throw std::invalid_argument("constant damping must be nonnegative");
}

Damping::Damping(PowerDecay m) : model_(m) {
  if (!(m.c > 0.0) || !(m.alpha >= 0.0)) {
    throw std::invalid_argument("power-decay damping needs c > 0 and alpha >= 0");
  }
}

Damping::Damping(PowerGrowth m) : model_(m) {
  if (!(m.c > 0.0) || !(m.alpha >= 0.0)) {
    throw std::invalid_argument("power-growth damping needs c > 0 and alpha >= 0");
  }
}

Damping::Damping(RemarkTwoDamping m) : model_(m) {
  if (!(m.mu > 0.0) || !(m.alpha < -1.0)) {
    throw std::invalid_argument("remark-two damping needs mu > 0 and alpha < -1");
  }
}

double Damping::operator()(double t) const {
  return std::visit(overloaded{
                        [](const NoDamping&) { return 0.0; },
                        [](const ConstantDamping& m) { return m.c; },
                        [t](const PowerDecay& m) { return m.c * std::pow(t + 1.0, -m.alpha); },
                        [t](const PowerGrowth& m) {
                          return m.alpha == 0.0 ? m.c : m.c * std::pow(t, m.alpha);
                        },
                        [t](const RemarkTwoDamping& m) {
                          const double s = t + 1.0;
                          return std::pow(s, -m.alpha) - m.mu * s / (1.0 + m.alpha) - m.alpha / s;
                        },
                    },
                    model_);
}

std::optional<double> Damping::exponent() const {
  return std::visit(overloaded{
                        [](const NoDamping&) -> std::optional<double> { return 0.0; },
                        [](const ConstantDamping&) -> std::optional<double> { return 0.0; },
                        [](const PowerDecay& m) -> std::optional<double> { return m.alpha; },
                        [](const PowerGrowth& m) -> std::optional<double> { return m.alpha; },
                        [](const RemarkTwoDamping&) -> std::optional<double> { return std::nullopt; },
                    },
                    model_);
}

std::string Damping::describe() const {
  return std::visit(
      overloaded{
          [](const NoDamping&) { return std::string("zero"); },
          [](const ConstantDamping& m) { return "constant(c=" + fmt_number(m.c) + ")"; },
          [](const PowerDecay& m) {
            return "power_decay(c=" + fmt_number(m.c) + ", alpha=" + fmt_number(m.alpha) + ")";
          },
          [](const PowerGrowth& m) {
            return "power_growth(c=" + fmt_number(m.c) + ", alpha=" + fmt_number(m.alpha) + ")";
          },
          [](const RemarkTwoDamping& m) {
            return "remark_two(mu=" + fmt_number(m.mu) + ", alpha=" + fmt_number(m.alpha) + ")";
          },
      },
      model_);
}

Damping paper_damping(int index) {
  switch (index) {
    case 0: return NoDamping{};
    case 1: return ConstantDamping{1.0};
    case 2: return PowerDecay{1.0, 0.5};
    case 3: return PowerDecay{1.0, 1.0};
    case 4: return PowerGrowth{1.0, 0.5};
    case 5: return PowerGrowth{1.0, 1.0};
    case 6: return PowerGrowth{1.0, 1.5};
    default: throw std::out_of_range("damping preset index must be in 0..6");
  }
}

double lojasiewicz_theta(const Nonlinearity& nl, double mu0) {
  if (!(mu0 > 0.0)) throw std::invalid_argument("mu0 must be positive");
  if (const auto* kg = std::get_if<KleinGordon>(&nl.variant())) {
    return kg->a > -mu0 ? 0.5 : 1.0 / (kg->p + 1.0);
  }
  return 0.5;
}

Admissibility admissible_alpha(const Damping& d, double theta) {
  if (!(theta > 0.0 && theta <= 0.5)) throw std::invalid_argument("theta must lie in (0, 1/2]");
  const auto alpha = d.exponent();
  if (!alpha) return Admissibility::NotApplicable;
  return (*alpha >= 0.0 && *alpha < theta / (1.0 - theta)) ? Admissibility::Admissible
                                                           : Admissibility::NotAdmissible;
}

std::pair<Field, Field> initial_profile(const Grid1D& g, double wave_speed) {
  if (!(wave_speed > 0.0 && wave_speed < 1.0)) {
    throw std::invalid_argument("wave speed c must lie in (0, 1)");
  }
  const double k = std::sqrt(1.0 - wave_speed * wave_speed);
  Field u1 = sample(g, [k](double x) { return 4.0 * k / std::cosh(x * k); });
  return {Field::zeros(g), std::move(u1)};
}

}  // namespace dampedwave
