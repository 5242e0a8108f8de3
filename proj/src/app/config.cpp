#include "dampedwave/app/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace dampedwave::app {

ConfigError::ConfigError(Kind kind, std::string location, const std::string& message)
    : std::runtime_error(to_string(kind) + " (" + location + "): " + message),
      kind_(kind),
      location_(std::move(location)) {}

std::string to_string(ConfigError::Kind kind) {
  switch (kind) {
    case ConfigError::Kind::UnknownKey: return "UnknownKey";
    case ConfigError::Kind::TypeMismatch: return "TypeMismatch";
    case ConfigError::Kind::ConstraintViolation: return "ConstraintViolation";
    case ConfigError::Kind::Syntax: return "Syntax";
  }
  return "ConfigError";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value, const std::string& loc) {
  const std::string text(value);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(ConfigError::Kind::TypeMismatch, loc,
                      std::string(key) + " expects a finite number, got '" + text + "'");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view value, const std::string& loc) {
  const std::string text(value);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || v < INT32_MIN ||
      v > INT32_MAX) {
    throw ConfigError(ConfigError::Kind::TypeMismatch, loc,
                      std::string(key) + " expects an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void ConfigBuilder::set(std::string_view key, std::string_view value, const std::string& location) {
  using Setter = std::function<void(std::string_view)>;
  auto real = [&](double& field) -> Setter {
    return [&field, key, &location](std::string_view v) { field = parse_double(key, v, location); };
  };
  auto text = [](std::string& field) -> Setter {
    return [&field](std::string_view v) { field = std::string(v); };
  };
  const std::map<std::string_view, Setter> setters{
      {"model", text(cfg_.model)},
      {"b", real(cfg_.b)},
      {"a", real(cfg_.a)},
      {"p", real(cfg_.p)},
      {"damping", text(cfg_.damping)},
      {"damping_c", real(cfg_.damping_c)},
      {"damping_alpha", real(cfg_.damping_alpha)},
      {"L", real(cfg_.L)},
      {"dx", real(cfg_.dx)},
      {"dt", real(cfg_.dt)},
      {"T", real(cfg_.T)},
      {"c", real(cfg_.c)},
      {"eta", real(cfg_.eta)},
      {"record_every",
       [this, key, &location](std::string_view v) { cfg_.record_every = parse_int(key, v, location); }},
      {"out_dir", text(cfg_.out_dir)},
      {"psi_source", text(cfg_.psi_source)},
      {"initial_data", text(cfg_.initial_data)},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) {
    throw ConfigError(ConfigError::Kind::UnknownKey, location, "unknown key '" + std::string(key) + "'");
  }
  it->second(value);
  origin_.insert_or_assign(std::string(key), location);
}

void ConfigBuilder::parse_text(std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string loc = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(ConfigError::Kind::Syntax, loc, "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(ConfigError::Kind::Syntax, loc, "missing key");
    set(key, value, loc);
  }
}

void ConfigBuilder::apply_override(std::string_view assignment) {
  const std::string loc = "--set " + std::string(assignment);
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(ConfigError::Kind::Syntax, loc, "expected key=value");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), loc);
}

std::string ConfigBuilder::where(std::string_view key) const {
  const auto it = origin_.find(key);
  return it == origin_.end() ? std::string("default ") + std::string(key) : it->second;
}

ExperimentConfig ConfigBuilder::build() const {
  const ExperimentConfig& c = cfg_;
  auto violate = [this](std::string_view key, const std::string& msg) {
    throw ConfigError(ConfigError::Kind::ConstraintViolation, where(key), msg);
  };
  auto guarded = [&](std::string_view key, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      violate(key, e.what());
    } catch (const std::out_of_range& e) {
      violate(key, e.what());
    }
  };

  guarded("model", [&] { (void)c.nonlinearity(); });
  guarded("damping", [&] { (void)c.damping_model(); });
  guarded("dx", [&] { (void)c.grid(); });
  if (!(c.T > 0.0)) violate("T", "T must be positive");
  if (!(c.dt > 0.0)) violate("dt", "dt must be positive");
  if (c.T < c.dt) violate("T", "T must be at least dt");
  if (!cfl_check(c.scheme(), c.grid())) {
    // Name whichever of dt/dx was set last from an explicit source.
    const std::string_view key = origin_.contains("dt") || !origin_.contains("dx") ? "dt" : "dx";
    violate(key, "CFL bound violated: dt = " + fmt(c.dt) + " > dx = " + fmt(c.grid().dx()));
  }
  if (std::abs(c.T / c.dt - std::round(c.T / c.dt)) > 1e-9 * (c.T / c.dt)) {
    violate("T", "T must be an integer multiple of dt");
  }
  if (!(c.c > 0.0 && c.c < 1.0)) violate("c", "wave speed c must lie in (0, 1)");
  if (!(c.eta >= 0.0 && c.eta < 1.0)) violate("eta", "eta must lie in [0, 1)");
  if (c.record_every < 1) violate("record_every", "record_every must be >= 1");
  if (c.out_dir.empty()) violate("out_dir", "out_dir must not be empty");
  if (c.psi_source != "zero" && c.psi_source != "newton-from-final" &&
      c.psi_source.rfind("file:", 0) != 0) {
    violate("psi_source", "psi_source must be zero, newton-from-final or file:<path>");
  }
  if (c.initial_data != "paper" && c.initial_data != "zero") {
    violate("initial_data", "initial_data must be paper or zero");
  }
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  ConfigBuilder b;
  b.parse_text(text);
  return b.build();
}

Nonlinearity ExperimentConfig::nonlinearity() const {
  if (model == "sine_gordon") return SineGordon{b};
  if (model == "klein_gordon") return KleinGordon{a, p};
  if (model == "linear_mass") return LinearMass{b};
  throw std::invalid_argument("model must be sine_gordon, klein_gordon or linear_mass");
}

Damping ExperimentConfig::damping_model() const {
  if (damping.size() == 2 && damping[0] == 'h' && damping[1] >= '0' && damping[1] <= '6') {
    return paper_damping(damping[1] - '0');
  }
  if (damping == "zero") return NoDamping{};
  if (damping == "constant") return ConstantDamping{damping_c};
  if (damping == "power_decay") return PowerDecay{damping_c, damping_alpha};
  if (damping == "power_growth") return PowerGrowth{damping_c, damping_alpha};
  throw std::invalid_argument("damping must be h0..h6, zero, constant, power_decay or power_growth");
}

Grid1D ExperimentConfig::grid() const { return Grid1D::from_spacing(L, dx); }

SchemeConfig ExperimentConfig::scheme() const { return SchemeConfig{dt, T, 1.0}; }

std::string ExperimentConfig::damping_tag() const { return damping; }

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream os;
  os << "model = " << model << "\n"
     << "b = " << fmt(b) << "\n"
     << "a = " << fmt(a) << "\n"
     << "p = " << fmt(p) << "\n"
     << "damping = " << damping << "\n"
     << "damping_c = " << fmt(damping_c) << "\n"
     << "damping_alpha = " << fmt(damping_alpha) << "\n"
     << "L = " << fmt(L) << "\n"
     << "dx = " << fmt(dx) << "\n"
     << "dt = " << fmt(dt) << "\n"
     << "T = " << fmt(T) << "\n"
     << "c = " << fmt(c) << "\n"
     << "eta = " << fmt(eta) << "\n"
     << "record_every = " << record_every << "\n"
     << "psi_source = " << psi_source << "\n"
     << "initial_data = " << initial_data << "\n";
  return os.str();
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_text()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dampedwave::app
