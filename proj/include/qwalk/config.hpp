#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "qwalk/coin_profile.hpp"

namespace qwalk {

enum class ExperimentKind { Bands, PhaseDiagram, WalkSingle, WalkTwo, Conversion, Protection, BoundStates };

std::string_view to_string(ExperimentKind kind);
/// Accepts the subcommand spelling ("phase-diagram", ...); throws ConfigError otherwise.
ExperimentKind parse_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Bands;
  double theta1 = 0.0;
  /// Uniform theta2, used when theta2_minus / theta2_plus are unset.
  double theta2 = 0.0;
  std::optional<double> theta2_minus;
  std::optional<double> theta2_plus;
  double width = 3.0;
  double center = 0.0;
  int steps = 60;
  int half_width = 62;
  /// up | down for walk-single; A | B | upup | downdown for two-particle runs.
  std::string initial;
  /// Empty means stdout.
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int n_k = 1024;
  int grid = 64;

  bool has_boundary() const { return theta2_minus.has_value() || theta2_plus.has_value(); }
  /// Boundary profile when theta2_minus / theta2_plus are set, uniform otherwise.
  CoinProfile coins() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Defaults of each experiment: conversion and the two-particle walk use
/// theta1 = pi/4 with theta2 from -pi/8 to pi/8; protection and bound-states
/// the single-crossing profile theta1 = pi/2, theta2 from -pi/4 to -3pi/4.
ExperimentConfig default_config(ExperimentKind kind);

/// Throws ConfigError for out-of-range fields, L < steps + 2, a half-width too
/// small for the profile to reach its asymptotes, and (protection,
/// bound-states) a gapless asymptotic phase.
void validate(const ExperimentConfig& config);

/// "1.5", "pi", "-pi/4", "3*pi/4", "0.25pi", "-3 * pi / 8". Throws ConfigError.
double parse_angle(std::string_view text);

/// Flat "key = value" lines; blank lines and '#' comments are ignored. Keys
/// absent from the text keep their value in `base`. Throws ConfigError on
/// unknown keys or malformed values.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base);
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);
/// Writes every field; numbers as %.17g so parse_config restores them exactly.
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace qwalk
