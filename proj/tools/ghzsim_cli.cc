// Copyright 2026 The ghzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ghzsim: run the GHZ generator, verify it against the published states and
// tables, sweep noise, and check .onet network files.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or parse error.

#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghzsim/dsl.hpp"
#include "ghzsim/pipeline.hpp"
#include "ghzsim/report.hpp"
#include "ghzsim/sampling.hpp"
#include "ghzsim/state_json.hpp"
#include "ghzsim/verify.hpp"

namespace {

using ghzsim::CircuitNetwork;
using ghzsim::RunOptions;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr double kFidelityFloor = 1.0 - 1e-9;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string builtin;
  std::string network;
  std::string noise;
  std::string weights;
  std::optional<double> theta;
  std::optional<double> alpha;
  std::uint64_t seed = 0;
  bool json = false;
  bool sample = false;
};

void add_network_flags(CLI::App* cmd, CommonFlags& f, bool with_sampling) {
  auto* builtin = cmd->add_option("--builtin", f.builtin, "Built-in network")
                      ->check(CLI::IsMember({"fig1", "fig3"}));
  auto* network = cmd->add_option("--network", f.network, ".onet network file");
  builtin->excludes(network);
  cmd->add_option("--noise", f.noise, "Noise: X@1,Z@3 | p=0.1 | none");
  cmd->add_option("--weights", f.weights, "Case weights w1,w2,w3");
  cmd->add_option("--theta", f.theta, "Kerr phase per coupling unit (radians)");
  cmd->add_option("--alpha", f.alpha, "Probe amplitude")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--json", f.json, "Machine-readable output");
  if (with_sampling) {
    cmd->add_option("--seed", f.seed, "Seed for --sample");
    cmd->add_flag("--sample", f.sample, "Draw one branch/pattern instead of the distribution");
  }
}

ghzsim::CaseWeights parse_weights(const std::string& text) {
  std::vector<double> ws;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      ws.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--weights: '" + item + "' is not a number");
    }
  }
  if (ws.size() != 3) throw UsageError("--weights needs three values w1,w2,w3");
  ghzsim::CaseWeights w{ws[0], ws[1], ws[2]};
  try {
    ghzsim::validate(w);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--weights: ") + e.what());
  }
  return w;
}

struct Setup {
  CircuitNetwork network;
  RunOptions options;
  std::optional<double> depolarizing;
  std::string name;
};

// Network from --builtin/--network (fig3 by default); DSL header values
// apply first, flags override them.
Setup resolve(const CommonFlags& f, const std::string& default_builtin = "fig3") {
  Setup s;
  if (!f.network.empty()) {
    s.network = ghzsim::dsl::elaborate(ghzsim::dsl::load_file(f.network));
    s.name = f.network;
  } else {
    s.name = f.builtin.empty() ? default_builtin : f.builtin;
    s.network = s.name == "fig1" ? ghzsim::build_ghzps() : ghzsim::build_fig3();
  }
  if (s.network.source) s.options.weights = *s.network.source;
  s.options.params = s.network.params;
  ghzsim::NoiseSpec noise = s.network.noise.value_or(ghzsim::NoiseSpec{});
  if (!f.noise.empty()) {
    try {
      noise = ghzsim::parse_noise_spec(f.noise);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--noise: ") + e.what());
    }
  }
  s.options.errors = noise.errors;
  s.depolarizing = noise.depolarizing;
  if (!f.weights.empty()) s.options.weights = parse_weights(f.weights);
  if (f.theta) s.options.params.theta = *f.theta;
  if (f.alpha) s.options.params.alpha = *f.alpha;
  return s;
}

bool is_fanin(const CircuitNetwork& network) {
  for (const auto& d : network.detectors) {
    if (d.modes.size() != 1) return false;
  }
  return !network.detectors.empty();
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_run(const CommonFlags& f) {
  Setup s = resolve(f);
  if (!is_fanin(s.network)) {
    if (s.depolarizing || !s.options.errors.empty()) {
      throw UsageError("noise needs channel markers; use the fig3 network");
    }
    auto runs = ghzsim::run_network(s.network, s.options);
    json out = ghzsim::ghzps_to_json(runs, s.options);
    out["network"] = s.name;
    bool ok = !runs.empty();
    for (const auto& b : out["branches"]) ok = ok && b["fidelity"].get<double>() >= kFidelityFloor;
    if (f.sample) {
      std::vector<double> w;
      for (const auto& b : out["branches"]) w.push_back(b["probability"].get<double>());
      json pick = out["branches"][ghzsim::sample_index(w, f.seed)];
      out = {{"network", s.name}, {"seed", f.seed}, {"options", out["options"]}, {"sample", pick}};
    }
    print_json(out);
    return ok ? kPass : kFail;
  }
  if (s.depolarizing) {
    ghzsim::MixtureReport m = ghzsim::run_mixture(s.network, s.options, *s.depolarizing);
    json out = ghzsim::to_json(m);
    out["network"] = s.name;
    out["options"] = ghzsim::to_json(s.options);
    print_json(out);
    return m.mean_fidelity >= kFidelityFloor ? kPass : kFail;
  }
  ghzsim::RunReport report = ghzsim::run_full(s.network, s.options);
  json out = ghzsim::to_json(report);
  out["network"] = s.name;
  if (f.sample) {
    const ghzsim::ReportEntry& e = ghzsim::sample_entry(report, f.seed);
    out = {{"network", s.name},
           {"seed", f.seed},
           {"options", out["options"]},
           {"sample", ghzsim::to_json(e)}};
    print_json(out);
    return e.fidelity >= kFidelityFloor ? kPass : kFail;
  }
  print_json(out);
  return !report.entries.empty() && report.min_fidelity >= kFidelityFloor ? kPass : kFail;
}

int report_checks(const std::vector<ghzsim::Check>& checks, bool as_json,
                  const std::string& summary) {
  const bool ok = ghzsim::all_passed(checks);
  if (as_json) {
    print_json(ghzsim::to_json(checks));
  } else {
    for (const auto& c : checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    }
    if (!summary.empty()) std::cout << summary << "\n";
    for (const auto& c : checks) {
      if (!c.passed) {
        std::cout << "first failure: " << c.name << "\n";
        break;
      }
    }
  }
  return ok ? kPass : kFail;
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

int cmd_verify_table1(const CommonFlags& f) {
  Setup s = resolve(f);
  auto checks = ghzsim::verify_table1(s.options);
  int table_rows = 0;
  int table_passed = 0;
  double worst = 1.0;
  for (const auto& c : checks) {
    if (c.name.starts_with("noiseless")) continue;
    ++table_rows;
    table_passed += c.passed;
    worst = std::min(worst, c.value);
  }
  std::string summary = std::to_string(table_passed) + "/" + std::to_string(table_rows) +
                        " rows: corrected fidelity " + fixed12(worst);
  return report_checks(checks, f.json, summary);
}

int cmd_verify_states(const CommonFlags& f) {
  Setup s = resolve(f);
  return report_checks(ghzsim::verify_states(s.options), f.json, "");
}

int cmd_verify_entanglement(const CommonFlags& f) {
  Setup s = resolve(f);
  auto checks = ghzsim::verify_entanglement(s.options);
  std::string summary;
  for (const auto& c : checks) {
    if (c.name.ends_with("Schmidt rank")) {
      if (!summary.empty()) summary += ", ";
      summary += c.name.substr(0, c.name.size() - 13) + " rank " +
                 std::to_string(static_cast<int>(c.value));
    }
  }
  return report_checks(checks, f.json, summary);
}

int cmd_sweep(const CommonFlags& f, const std::vector<double>& ps) {
  Setup s = resolve(f);
  if (!is_fanin(s.network)) throw UsageError("sweep-noise needs the fig3 network");
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p values must lie in [0, 1]");
  }
  std::vector<std::future<ghzsim::MixtureReport>> jobs;
  for (double p : ps) {
    jobs.push_back(std::async(std::launch::async, [&s, p] {
      return ghzsim::run_mixture(s.network, s.options, p);
    }));
  }
  json rows = json::array();
  if (!f.json) std::cout << "p\tmean_fidelity\tin_model_weight\n";
  for (auto& job : jobs) {
    ghzsim::MixtureReport m = job.get();
    rows.push_back({{"p", m.p}, {"mean_fidelity", m.mean_fidelity},
                    {"in_model_weight", m.in_model_weight}});
    if (!f.json) {
      std::cout << m.p << "\t" << fixed12(m.mean_fidelity) << "\t" << fixed12(m.in_model_weight)
                << "\n";
    }
  }
  if (f.json) print_json({{"network", s.name}, {"options", ghzsim::to_json(s.options)}, {"sweep", rows}});
  return kPass;
}

int cmd_parse(const std::string& file, bool as_json) {
  ghzsim::dsl::DslDocument doc = ghzsim::dsl::load_file(file);
  CircuitNetwork net = ghzsim::dsl::elaborate(doc);
  if (as_json) {
    json detectors = json::object();
    for (const auto& d : net.detectors) {
      json modes = json::array();
      for (const auto& m : d.modes) modes.push_back(m.id());
      detectors[d.name] = modes;
    }
    print_json({{"file", file},
                {"statements", doc.statements.size()},
                {"steps", net.steps.size()},
                {"couplings", net.couplings.size()},
                {"detectors", detectors},
                {"canonical", ghzsim::dsl::pretty_print(doc)}});
  } else {
    std::cout << ghzsim::dsl::pretty_print(doc);
  }
  return kPass;
}

int cmd_dump(const CommonFlags& f) {
  Setup s = resolve(f);
  json branches = json::array();
  for (const auto& run : ghzsim::run_network(s.network, s.options)) {
    json patterns = json::array();
    for (const auto& p : run.patterns) {
      patterns.push_back({{"pattern", ghzsim::to_json(p.pattern)},
                          {"probability", p.probability},
                          {"state", ghzsim::to_json(p.state)}});
    }
    json b = {{"branch", ghzsim::to_string(run.branch)},
              {"branch_probability", run.branch_probability},
              {"phi", run.phi},
              {"patterns", patterns}};
    if (run.channel_state) {
      b["channel_state"] = ghzsim::to_json(*run.channel_state);
      b["channel_probability"] = run.channel_probability;
      b["family"] = run.family ? json(run.family->name()) : json(nullptr);
    }
    branches.push_back(b);
  }
  print_json({{"network", s.name}, {"options", ghzsim::to_json(s.options)}, {"branches", branches}});
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-photon GHZ generation with linear optics and QND detection"};
  app.require_subcommand(1);

  CommonFlags run_f, t1_f, st_f, ent_f, sweep_f, dump_f;
  auto* run = app.add_subcommand("run", "Run the generator and report every branch/pattern");
  add_network_flags(run, run_f, true);
  auto* t1 = app.add_subcommand("verify-table1", "Check the correction table row by row");
  add_network_flags(t1, t1_f, false);
  auto* st = app.add_subcommand("verify-states", "Compare simulated states with the published ones");
  add_network_flags(st, st_f, false);
  auto* ent = app.add_subcommand("analyze-entanglement",
                                 "Polarization/spatial factorization of the GHZps outputs");
  ent->alias("verify-entanglement");
  add_network_flags(ent, ent_f, false);
  auto* sweep = app.add_subcommand("sweep-noise", "Mean corrected fidelity under depolarization");
  add_network_flags(sweep, sweep_f, false);
  std::vector<double> ps{0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75};
  sweep->add_option("--p", ps, "Depolarizing probabilities")->delimiter(',');
  auto* parse = app.add_subcommand("parse", "Parse and elaborate an .onet file");
  std::string parse_file;
  bool parse_json = false;
  parse->add_option("file", parse_file, ".onet file")->required();
  parse->add_flag("--json", parse_json, "Machine-readable output");
  auto* dump = app.add_subcommand("dump", "Dump branch, channel and pattern states");
  add_network_flags(dump, dump_f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_f);
    if (t1->parsed()) return cmd_verify_table1(t1_f);
    if (st->parsed()) return cmd_verify_states(st_f);
    if (ent->parsed()) return cmd_verify_entanglement(ent_f);
    if (sweep->parsed()) return cmd_sweep(sweep_f, ps);
    if (parse->parsed()) return cmd_parse(parse_file, parse_json);
    if (dump->parsed()) return cmd_dump(dump_f);
  } catch (const ghzsim::dsl::DslError& e) {
    std::cerr << "error: " << e.error().to_string() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
