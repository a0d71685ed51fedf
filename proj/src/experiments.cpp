#include "qwalk/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qwalk/entanglement.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(c.kind));
  j["theta1"] = c.theta1;
  j["theta2"] = c.theta2;
  j["theta2_minus"] = c.theta2_minus ? nlohmann::ordered_json(*c.theta2_minus) : nullptr;
  j["theta2_plus"] = c.theta2_plus ? nlohmann::ordered_json(*c.theta2_plus) : nullptr;
  j["width"] = c.width;
  j["center"] = c.center;
  j["steps"] = c.steps;
  j["half_width"] = c.half_width;
  j["initial"] = c.initial;
  j["out"] = c.out;
  j["format"] = c.format;
  j["seed"] = c.seed;
  j["n_k"] = c.n_k;
  j["grid"] = c.grid;
  return j;
}

ExperimentResult start(const ExperimentConfig& c) {
  ExperimentResult r;
  r.metadata["version"] = library_version();
  r.metadata["config"] = config_json(c);
  r.metadata["warnings"] = nlohmann::ordered_json::array();
  return r;
}

nlohmann::ordered_json report_json(const BoundStateReport& report) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& s : report.states) {
    nlohmann::ordered_json j;
    j["quasi_energy"] = s.quasi_energy;
    j["center"] = s.center;
    j["decay_length"] = std::isfinite(s.decay_length) ? nlohmann::ordered_json(s.decay_length) : nullptr;
    j["inverse_participation"] = s.inverse_participation;
    out.push_back(std::move(j));
  }
  return out;
}

TwoParticleField two_particle_initial(const std::string& label, int half_width) {
  if (label == "A") return make_localized_pair(half_width, SymmetricSpin::SymUpDown);
  if (label == "B") return make_localized_pair(half_width, SymmetricSpin::BellPhiPlus);
  if (label == "upup") return make_localized_pair(half_width, SymmetricSpin::UpUp);
  if (label == "downdown") return make_localized_pair(half_width, SymmetricSpin::DownDown);
  throw ConfigError("unknown two-particle initial state '" + label + "'");
}

Table joint_table(const TwoParticleField& field, int step, int reach) {
  Table t{{"step", "x1", "x2", "prob"}, {}};
  const int r = std::min(reach, field.half_width());
  for (int x1 = -r; x1 <= r; ++x1)
    for (int x2 = -r; x2 <= r; ++x2) t.add_row({(long long)step, (long long)x1, (long long)x2, field.pair_probability(x1, x2)});
  return t;
}

void warn(ExperimentResult& r, const std::string& message) { r.metadata["warnings"].push_back(message); }

// Records the classes of both asymptotic phases; with `single_zone` a
// warning is added when they differ.
void record_zones(ExperimentResult& r, const CoinProfile& coins, bool single_zone) {
  const auto [minus, plus] = coins.asymptotes();
  const auto a = gap_classification(coins.theta1(), minus);
  const auto b = gap_classification(coins.theta1(), plus);
  r.metadata["phase_minus"] = std::string(to_string(a));
  r.metadata["phase_plus"] = std::string(to_string(b));
  if (single_zone && (a != b || is_gapless(a))) {
    warn(r, "the coin profile does not stay inside one gapped topological zone (" + std::string(to_string(a)) +
                " -> " + std::string(to_string(b)) + ")");
  }
}

}  // namespace

const Table& ExperimentResult::table(const std::string& name) const {
  for (const auto& [n, t] : tables)
    if (n == name) return t;
  throw std::out_of_range("no table named " + name);
}

std::string library_version() { return QWALK_VERSION; }

Table bound_state_table(const BoundStateReport& report) {
  Table t{{"index", "quasi_energy", "center", "decay_length"}, {}};
  for (std::size_t i = 0; i < report.states.size(); ++i) {
    const auto& s = report.states[i];
    t.add_row({(long long)i, s.quasi_energy, (long long)s.center,
               std::isfinite(s.decay_length) ? Cell(s.decay_length) : Cell()});
  }
  return t;
}

ExperimentResult run_bands(const ExperimentConfig& c) {
  auto r = start(c);
  const auto a = band_structure(c.theta1, c.theta2, c.n_k);
  Table t{{"k", "E_plus", "E_minus"}, {}};
  for (std::size_t j = 0; j < a.k.size(); ++j) t.add_row({a.k[j], a.energy_plus[j], a.energy_minus[j]});
  r.metadata["gap0"] = a.gap0;
  r.metadata["gap_pi"] = a.gap_pi;
  r.metadata["winding"] = a.winding ? nlohmann::ordered_json(*a.winding) : nullptr;
  r.metadata["classification"] = std::string(to_string(gap_classification(c.theta1, c.theta2)));
  r.tables.emplace_back("bands", std::move(t));
  return r;
}

ExperimentResult run_phase_diagram(const ExperimentConfig& c) {
  auto r = start(c);
  Table t{{"theta1", "theta2", "gap0", "gap_pi", "W"}, {}};
  for (int i = 0; i < c.grid; ++i) {
    const double t1 = 2.0 * kPi * (i + 0.5) / c.grid;
    for (int j = 0; j < c.grid; ++j) {
      const double t2 = 2.0 * kPi * (j + 0.5) / c.grid;
      const auto a = band_structure(t1, t2, c.n_k);
      t.add_row({t1, t2, a.gap0, a.gap_pi, a.winding ? Cell((long long)*a.winding) : Cell()});
    }
  }
  r.tables.emplace_back("phase_diagram", std::move(t));
  return r;
}

ExperimentResult run_walk_single(const ExperimentConfig& c) {
  auto r = start(c);
  const auto coins = c.coins();
  const auto initial = SpinorField::localized(c.half_width, 0, parse_spin(c.initial == "up" ? "u" : "d"));
  Table t{{"step", "x", "prob"}, {}};
  evolve_each(initial, coins, c.steps, [&](int step, const SpinorField& f) {
    for (int x = -c.steps; x <= c.steps; ++x) t.add_row({(long long)step, (long long)x, f.site_probability(x)});
  });
  r.tables.emplace_back("walk", std::move(t));
  return r;
}

ExperimentResult run_walk_two(const ExperimentConfig& c) {
  auto r = start(c);
  const auto coins = c.coins();
  Table marginal{{"step", "x", "prob"}, {}};
  const auto last = evolve_each(two_particle_initial(c.initial, c.half_width), coins, c.steps,
                                [&](int step, const TwoParticleField& f) {
                                  for (int x = -c.steps; x <= c.steps; ++x) {
                                    double p = 0.0;
                                    for (int x2 = -c.half_width; x2 <= c.half_width; ++x2) p += f.pair_probability(x, x2);
                                    marginal.add_row({(long long)step, (long long)x, p});
                                  }
                                });
  r.tables.emplace_back("marginal", std::move(marginal));
  r.tables.emplace_back("joint", joint_table(last, c.steps, c.steps));
  return r;
}

ExperimentResult run_conversion(const ExperimentConfig& c) {
  auto r = start(c);
  const auto coins = c.coins();
  record_zones(r, coins, true);
  std::vector<std::pair<std::string, Table>> joints;
  for (const std::string label : {"A", "B"}) {
    Table series{{"step", "x_max", "detection_probability", "negativity"}, {}};
    const auto last = evolve_each(two_particle_initial(label, c.half_width), coins, c.steps,
                                  [&](int step, const TwoParticleField& f) {
                                    int x_max = 0;
                                    try {
                                      x_max = antidiagonal_max(f);
                                    } catch (const NoSeparation&) {
                                      // The initial pair sits at the origin; its spin block is
                                      // measured there. Later steps without separation are missing.
                                      if (step != 0) {
                                        series.add_row({(long long)step, Cell(), Cell(), Cell()});
                                        return;
                                      }
                                    }
                                    try {
                                      const auto proj = spin_pair_density_matrix(f, x_max, -x_max);
                                      series.add_row({(long long)step, (long long)x_max, proj.detection_probability,
                                                      negativity(proj.rho)});
                                    } catch (const NegligibleOverlap&) {
                                      series.add_row({(long long)step, Cell(), Cell(), Cell()});
                                    }
                                  });
    r.tables.emplace_back(label, std::move(series));
    joints.emplace_back("joint_" + label, joint_table(last, c.steps, c.steps));
  }
  for (auto& j : joints) r.tables.push_back(std::move(j));
  return r;
}

ExperimentResult run_protection(const ExperimentConfig& c) {
  auto r = start(c);
  const auto coins = c.coins();
  record_zones(r, coins, false);
  const auto report = find_bound_states(coins, c.half_width);
  r.metadata["bound_states"] = report_json(report);
  if (report.states.empty()) warn(r, "the coin profile supports no bound state");

  Table series{{"step", "detection_probability", "mode_negativity"}, {}};
  const auto last = evolve_each(two_particle_initial(c.initial, c.half_width), coins, c.steps,
                                [&](int step, const TwoParticleField& f) {
                                  const double p = f.pair_probability(0, 0);
                                  try {
                                    series.add_row({(long long)step, p, mode_negativity(f)});
                                  } catch (const NegligibleOverlap&) {
                                    series.add_row({(long long)step, p, Cell()});
                                  }
                                });
  r.tables.emplace_back("series", std::move(series));
  r.tables.emplace_back("bound_states", bound_state_table(report));
  r.tables.emplace_back("joint", joint_table(last, c.steps, c.steps));
  return r;
}

ExperimentResult run_bound_states(const ExperimentConfig& c) {
  auto r = start(c);
  const auto coins = c.coins();
  record_zones(r, coins, false);
  const auto report = find_bound_states(coins, c.half_width);
  r.metadata["bound_states"] = report_json(report);
  r.tables.emplace_back("bound_states", bound_state_table(report));
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  validate(c);
  switch (c.kind) {
    case ExperimentKind::Bands:
      return run_bands(c);
    case ExperimentKind::PhaseDiagram:
      return run_phase_diagram(c);
    case ExperimentKind::WalkSingle:
      return run_walk_single(c);
    case ExperimentKind::WalkTwo:
      return run_walk_two(c);
    case ExperimentKind::Conversion:
      return run_conversion(c);
    case ExperimentKind::Protection:
      return run_protection(c);
    case ExperimentKind::BoundStates:
      return run_bound_states(c);
  }
  throw ConfigError("unknown experiment kind");
}

std::vector<std::string> write_result(const ExperimentResult& result, const ExperimentConfig& c,
                                      std::ostream& stdout_stream) {
  std::vector<std::string> written;
  auto open = [&](const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    written.push_back(path);
    return f;
  };

  if (c.format == "json") {
    nlohmann::ordered_json doc;
    doc["tables"] = nlohmann::ordered_json::object();
    for (const auto& [name, t] : result.tables) doc["tables"][name] = to_json(t);
    doc["metadata"] = result.metadata;
    const std::string text = doc.dump(2) + "\n";
    if (c.out.empty()) {
      stdout_stream << text;
    } else {
      open(c.out) << text;
    }
    return written;
  }

  if (c.out.empty()) {
    for (const auto& [name, t] : result.tables) {
      if (result.tables.size() > 1) stdout_stream << "# " << name << '\n';
      write_csv(stdout_stream, t);
    }
    return written;
  }
  if (result.tables.size() == 1) {
    auto f = open(c.out);
    write_csv(f, result.tables.front().second);
    return written;
  }
  const std::filesystem::path p(c.out);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  const std::filesystem::path stem = p.parent_path() / p.stem();
  for (const auto& [name, t] : result.tables) {
    auto f = open(stem.string() + "_" + name + ext);
    write_csv(f, t);
  }
  return written;
}

}  // namespace qwalk
