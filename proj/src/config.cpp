#include "qwalk/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/state.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 7> kKindNames{{
    {ExperimentKind::Bands, "bands"},
    {ExperimentKind::PhaseDiagram, "phase-diagram"},
    {ExperimentKind::WalkSingle, "walk-single"},
    {ExperimentKind::WalkTwo, "walk-two"},
    {ExperimentKind::Conversion, "conversion"},
    {ExperimentKind::Protection, "protection"},
    {ExperimentKind::BoundStates, "bound-states"},
}};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError("invalid " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno != 0) {
    throw ConfigError("invalid " + std::string(what) + ": '" + s + "' (expected an integer)");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  const long long v = parse_integer(text, what);
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

CoinProfile ExperimentConfig::coins() const {
  if (!has_boundary()) return CoinProfile::uniform(theta1, theta2);
  return CoinProfile::boundary(theta1, theta2_minus.value_or(theta2), theta2_plus.value_or(theta2), center, width);
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::Bands:
    case ExperimentKind::PhaseDiagram:
      c.theta1 = kPi / 2;
      break;
    case ExperimentKind::WalkSingle:
      c.theta1 = kPi / 4;
      c.initial = "up";
      break;
    case ExperimentKind::WalkTwo:
    case ExperimentKind::Conversion:
      c.theta1 = kPi / 4;
      c.theta2_minus = -kPi / 8;
      c.theta2_plus = kPi / 8;
      c.initial = "B";
      break;
    case ExperimentKind::Protection:
    case ExperimentKind::BoundStates:
      c.theta1 = kPi / 2;
      c.theta2_minus = -kPi / 4;
      c.theta2_plus = -3 * kPi / 4;
      c.half_width = 80;
      c.initial = "B";
      break;
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  for (double v : {c.theta1, c.theta2, c.width, c.center}) {
    if (!std::isfinite(v)) throw ConfigError("angles and profile parameters must be finite");
  }
  if (c.has_boundary() && !(c.theta2_minus && c.theta2_plus)) {
    throw ConfigError("theta2_minus and theta2_plus must be given together");
  }
  if (c.width < 0.0) throw ConfigError("width must be >= 0 (0 selects a sharp step)");
  if (c.steps < 0) throw ConfigError("steps must be >= 0");
  if (c.half_width < 1) throw ConfigError("half_width must be >= 1");
  if (c.half_width < c.steps + 2) {
    throw ConfigError("half_width " + std::to_string(c.half_width) + " is smaller than steps + 2 = " +
                      std::to_string(c.steps + 2) + "; increase half_width or reduce steps");
  }
  if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
  if (c.n_k < 3) throw ConfigError("n_k must be >= 3");
  if (c.grid < 1) throw ConfigError("grid must be >= 1");

  if (c.kind == ExperimentKind::WalkSingle) {
    if (c.initial != "up" && c.initial != "down") throw ConfigError("walk-single initial must be up or down");
  } else if (c.kind == ExperimentKind::WalkTwo || c.kind == ExperimentKind::Protection) {
    if (c.initial != "A" && c.initial != "B" && c.initial != "upup" && c.initial != "downdown") {
      throw ConfigError("initial must be one of A, B, upup, downdown");
    }
  }

  if (c.kind == ExperimentKind::Protection || c.kind == ExperimentKind::BoundStates) {
    const CoinProfile coins = c.coins();
    const auto [minus, plus] = coins.asymptotes();
    if (std::abs(coins.theta2_at(-c.half_width) - minus) > 1e-6 ||
        std::abs(coins.theta2_at(c.half_width) - plus) > 1e-6) {
      throw ConfigError("half_width too small for the theta2 profile to reach its asymptotes");
    }
    for (double t2 : {minus, plus}) {
      const auto cls = gap_classification(coins.theta1(), t2);
      if (is_gapless(cls)) {
        throw ConfigError("asymptotic phase (theta1, theta2) = (" + format_double(coins.theta1()) + ", " +
                          format_double(t2) + ") is " + std::string(to_string(cls)) +
                          "; bound states need gapped phases on both sides");
      }
    }
  }
}

double parse_angle(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(ch));
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_number(s, "angle");

  std::string prefix = s.substr(0, at);
  std::string suffix = s.substr(at + 2);
  double factor = 1.0;
  if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
  if (prefix == "-") {
    factor = -1.0;
  } else if (prefix == "+") {
    factor = 1.0;
  } else if (!prefix.empty()) {
    factor = parse_number(prefix, "angle");
  }
  double divisor = 1.0;
  if (!suffix.empty()) {
    if (suffix.front() != '/') throw ConfigError("invalid angle: '" + std::string(text) + "'");
    divisor = parse_number(suffix.substr(1), "angle");
    if (divisor == 0.0) throw ConfigError("invalid angle: division by zero");
  }
  return factor * kPi / divisor;
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig c) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key == "kind") {
      c.kind = parse_kind(value);
    } else if (key == "theta1") {
      c.theta1 = parse_angle(value);
    } else if (key == "theta2") {
      c.theta2 = parse_angle(value);
    } else if (key == "theta2_minus") {
      c.theta2_minus = parse_angle(value);
    } else if (key == "theta2_plus") {
      c.theta2_plus = parse_angle(value);
    } else if (key == "width") {
      c.width = parse_number(value, "width");
    } else if (key == "center") {
      c.center = parse_number(value, "center");
    } else if (key == "steps") {
      c.steps = parse_int(value, "steps");
    } else if (key == "half_width") {
      c.half_width = parse_int(value, "half_width");
    } else if (key == "initial") {
      c.initial = value;
    } else if (key == "out") {
      c.out = value;
    } else if (key == "format") {
      c.format = value;
    } else if (key == "seed") {
      const long long v = parse_integer(value, "seed");
      if (v < 0) throw ConfigError("seed must be >= 0");
      c.seed = static_cast<std::uint64_t>(v);
    } else if (key == "n_k") {
      c.n_k = parse_int(value, "n_k");
    } else if (key == "grid") {
      c.grid = parse_int(value, "grid");
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, std::move(base));
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
  out << "kind = " << to_string(c.kind) << '\n';
  out << "theta1 = " << format_double(c.theta1) << '\n';
  out << "theta2 = " << format_double(c.theta2) << '\n';
  if (c.theta2_minus) out << "theta2_minus = " << format_double(*c.theta2_minus) << '\n';
  if (c.theta2_plus) out << "theta2_plus = " << format_double(*c.theta2_plus) << '\n';
  out << "width = " << format_double(c.width) << '\n';
  out << "center = " << format_double(c.center) << '\n';
  out << "steps = " << c.steps << '\n';
  out << "half_width = " << c.half_width << '\n';
  out << "initial = " << c.initial << '\n';
  out << "out = " << c.out << '\n';
  out << "format = " << c.format << '\n';
  out << "seed = " << c.seed << '\n';
  out << "n_k = " << c.n_k << '\n';
  out << "grid = " << c.grid << '\n';
}

}  // namespace qwalk
