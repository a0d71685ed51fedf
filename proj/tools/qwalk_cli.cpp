// qwalk: command-line driver for the quantum-walk experiments.
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical guard tripped.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::map<std::string, std::string> values;
  std::string config_path;
};

void add_common_flags(CLI::App* sub, Flags& flags) {
  auto text = [&](const std::string& name, const std::string& key, const std::string& help) {
    sub->add_option(name, flags.values[key], help);
  };
  text("--theta1", "theta1", "uniform first coin angle (radians; accepts forms like pi/4)");
  text("--theta2", "theta2", "uniform second coin angle");
  text("--theta2-minus", "theta2_minus", "second coin angle as x -> -infinity");
  text("--theta2-plus", "theta2_plus", "second coin angle as x -> +infinity");
  text("--width", "width", "boundary width in sites (0 = sharp step)");
  text("--center", "center", "boundary center site");
  text("--steps", "steps", "number of walk steps");
  text("--half-width", "half_width", "lattice half-width L (sites -L..L)");
  text("--initial", "initial", "initial state: A|B|upup|downdown (two particles), up|down (one)");
  text("--out", "out", "output file (default stdout)");
  text("--format", "format", "csv or json");
  text("--seed", "seed", "random seed (recorded only)");
  text("--n-k", "n_k", "quasi-momentum samples");
  text("--grid", "grid", "phase-diagram grid size per axis");
  sub->add_option("--config", flags.config_path, "key = value config file; its entries override flags");
}

qwalk::ExperimentConfig build_config(qwalk::ExperimentKind kind, const Flags& flags, const CLI::App& sub) {
  std::string lines;
  for (const auto& [key, value] : flags.values) {
    std::string flag = "--" + key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    if (sub.get_option(flag)->count() > 0) lines += key + " = " + value + "\n";
  }
  std::istringstream in(lines);
  auto config = qwalk::parse_config(in, qwalk::default_config(kind));
  if (!flags.config_path.empty()) {
    config = qwalk::load_config(flags.config_path, config);
    if (config.kind != kind) {
      throw qwalk::ConfigError("config file is for '" + std::string(qwalk::to_string(config.kind)) +
                               "' but the subcommand is '" + std::string(qwalk::to_string(kind)) + "'");
    }
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time quantum walk experiments"};
  app.set_version_flag("--version", qwalk::library_version());
  app.require_subcommand(1);

  const qwalk::ExperimentKind kinds[] = {
      qwalk::ExperimentKind::Bands,      qwalk::ExperimentKind::PhaseDiagram, qwalk::ExperimentKind::WalkSingle,
      qwalk::ExperimentKind::WalkTwo,    qwalk::ExperimentKind::Conversion,   qwalk::ExperimentKind::Protection,
      qwalk::ExperimentKind::BoundStates};
  std::map<qwalk::ExperimentKind, Flags> flags;
  std::map<qwalk::ExperimentKind, CLI::App*> subs;
  const std::map<qwalk::ExperimentKind, std::string> help = {
      {qwalk::ExperimentKind::Bands, "quasi-energy bands, gaps and winding for uniform coins"},
      {qwalk::ExperimentKind::PhaseDiagram, "winding and gap class over the (theta1, theta2) torus"},
      {qwalk::ExperimentKind::WalkSingle, "position distribution of one walker per step"},
      {qwalk::ExperimentKind::WalkTwo, "two-particle walk: per-step marginal and final joint distribution"},
      {qwalk::ExperimentKind::Conversion, "spin-entanglement series of the A and B pairs at the best (x, -x)"},
      {qwalk::ExperimentKind::Protection, "mode entanglement at the origin next to topological walls"},
      {qwalk::ExperimentKind::BoundStates, "localized eigenstates of the step operator at quasi-energy 0 and pi"}};
  for (auto kind : kinds) {
    auto* sub = app.add_subcommand(std::string(qwalk::to_string(kind)), help.at(kind));
    add_common_flags(sub, flags[kind]);
    subs[kind] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    for (auto kind : kinds) {
      if (!subs[kind]->parsed()) continue;
      const auto config = build_config(kind, flags[kind], *subs[kind]);
      const auto result = qwalk::run_experiment(config);
      for (const auto& w : result.metadata["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
      qwalk::write_result(result, config, std::cout);
    }
  } catch (const qwalk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qwalk::NumericalGuard& e) {
    std::cerr << "numerical guard: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
