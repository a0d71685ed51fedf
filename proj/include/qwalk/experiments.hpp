#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qwalk/config.hpp"
#include "qwalk/table.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

struct ExperimentResult {
  /// Named tables in emission order.
  std::vector<std::pair<std::string, Table>> tables;
  /// Config echo, library version, warnings and experiment-specific extras.
  nlohmann::ordered_json metadata;

  const Table& table(const std::string& name) const;
};

std::string library_version();

/// (index, quasi_energy, center, decay_length)
Table bound_state_table(const BoundStateReport& report);

/// (k, E_plus, E_minus); metadata carries gap0, gap_pi and the winding number.
ExperimentResult run_bands(const ExperimentConfig& config);
/// (theta1, theta2, gap0, gap_pi, W) on grid x grid cell centers of (0, 2pi)^2;
/// W is empty where the spectrum is gapless.
ExperimentResult run_phase_diagram(const ExperimentConfig& config);
/// (step, x, prob) for every step and site.
ExperimentResult run_walk_single(const ExperimentConfig& config);
/// "marginal": (step, x, prob) one-particle marginal per step; "joint":
/// (step, x1, x2, prob) after the last step.
ExperimentResult run_walk_two(const ExperimentConfig& config);
/// "A", "B": (step, x_max, detection_probability, negativity);
/// "joint_A", "joint_B": final joint distributions.
ExperimentResult run_conversion(const ExperimentConfig& config);
/// "series": (step, detection_probability, mode_negativity) at the origin,
/// "bound_states", and the final "joint" distribution.
ExperimentResult run_protection(const ExperimentConfig& config);
ExperimentResult run_bound_states(const ExperimentConfig& config);

/// Validates the config and dispatches on its kind.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the result as the config asks. CSV: a single table goes to `out`,
/// several to "<stem>_<name><ext>"; without `out` every table goes to
/// `stdout_stream` behind a "# name" line. JSON: one document
/// {"tables": {...}, "metadata": {...}}. Returns the files written.
std::vector<std::string> write_result(const ExperimentResult& result, const ExperimentConfig& config,
                                      std::ostream& stdout_stream);

}  // namespace qwalk
