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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and nowhere else.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ghzsim/density.hpp"
#include "ghzsim/dsl.hpp"
#include "ghzsim/pipeline.hpp"
#include "ghzsim/qnd.hpp"
#include "ghzsim/source.hpp"
#include "ghzsim/verify.hpp"
#include "oracle.hpp"

namespace {

using namespace ghzsim;  // NOLINT
using enum Polarization;

constexpr double kStateTol = 1e-12;
constexpr double kOracleTol = 1e-10;
constexpr int kFuzzCases = 2000;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

PureState single(const char* mode, Polarization p) {
  return PureState::basis(FockKet::of({{mode, p}}));
}

Outcome branch_states() {
  Outcome o;
  auto runs = run_ghzps();
  o.require(runs.size() == 2 && runs[0].patterns.size() == 1 && runs[1].patterns.size() == 1,
            "expected one coincidence pattern per branch");
  if (!o.passed) return o;
  const PureState& a = runs[0].patterns[0].state;
  const PureState& b = runs[1].patterns[0].state;
  const double fa = fidelity(a, ghzps_branch_a_literal());
  const double fb = fidelity(b, ghzps_branch_b_literal());
  o.require(fa >= 1 - kStateTol, "branch A fidelity " + num(fa));
  o.require(fb >= 1 - kStateTol, "branch B fidelity " + num(fb));
  o.require(a.size() == 4, "branch A has " + std::to_string(a.size()) + " kets");
  for (const auto& [ket, amp] : a.terms()) {
    o.require(std::abs(std::abs(amp) - 0.5) < kStateTol, "branch A amplitude " + num(std::abs(amp)));
  }
  if (o.passed) o.detail = "F_A = " + num(fa) + ", F_B = " + num(fb) + ", 4 kets at 1/2";
  return o;
}

Outcome component_maps() {
  Outcome o;
  CircuitNetwork net = build_ghzps();
  CircuitNetwork splitters = net;
  splitters.steps.pop_back();  // the trigger eraser
  const double h = 1.0 / std::sqrt(2.0);
  auto pair = [&](const char* m1, Polarization p1, const char* m2, Polarization p2) {
    return PureState({{FockKet::of({{m1, p1}}), h}, {FockKet::of({{m2, p2}}), h}});
  };
  struct Map {
    const char* mode;
    Polarization pol;
    PureState expected;
  };
  const std::vector<Map> maps = {
      {"a1", H, single("T1", H)},           {"a2", H, single("T2", H)},
      {"a1", V, pair("D1", V, "D2", H)},    {"a2", V, pair("d1", V, "d2", H)},
      {"b1", H, pair("D1", H, "D3", H)},    {"b2", H, pair("d1", H, "d3", H)},
      {"b1", V, pair("D2", V, "D3", V)},    {"b2", V, pair("d2", V, "d3", V)},
  };
  double worst = 0.0;
  for (const Map& m : maps) {
    PureState out = propagate(splitters, single(m.mode, m.pol)).output;
    worst = std::max(worst, (out - m.expected).norm());
  }
  o.require(worst < kStateTol, "worst single-photon deviation " + num(worst));
  // The eraser sends either trigger arm to T with amplitude 1/sqrt2.
  for (const char* t : {"T1", "T2"}) {
    CircuitNetwork eraser;
    eraser.steps.push_back(net.steps.back());
    Complex amp = propagate(eraser, single(t, H)).output.amplitude(FockKet::of({{"T", H}}));
    o.require(std::abs(amp - Complex(h)) < kStateTol, std::string("eraser on ") + t);
  }
  if (o.passed) o.detail = "8 maps, worst deviation " + num(worst);
  return o;
}

Outcome factorization() {
  Outcome o;
  for (const Check& c : verify_entanglement()) {
    o.require(c.passed, c.name + ": " + c.detail);
  }
  if (o.passed) o.detail = "branch A rank 1, branch B rank 2 with purity 1/2";
  return o;
}

Outcome evolution_table() {
  Outcome o;
  CircuitNetwork net = build_fanin();
  int rows = 0;
  for (const NoiseFamily& f : all_families(Layout::kMixed)) {
    PureState out = propagate(net, with_trigger(family_state(f))).output;
    PureState bare = factor_out(out, std::vector<SpatialMode>{"T"});
    const double fid = fidelity(bare, fanin_output_literal(f));
    o.require(fid >= 1 - kStateTol, f.name() + " output fidelity " + num(fid));
    auto patterns = postselect_coincidence(out, net);
    double total = 0.0;
    for (const auto& p : patterns) {
      o.require(std::abs(p.probability - 0.5) < kStateTol,
                f.name() + " " + p.pattern.label() + " probability " + num(p.probability));
      total += p.probability;
      ++rows;
    }
    o.require(patterns.size() == 2, f.name() + " has " + std::to_string(patterns.size()) + " patterns");
    o.require(std::abs(1.0 - total) < kStateTol, f.name() + " weight outside its two patterns");
  }
  if (o.passed) o.detail = "8 families x 2 patterns at probability 1/2, no other weight";
  return o;
}

Outcome correction_table_closure() {
  Outcome o;
  int rows = 0;
  for (const Check& c : verify_table1()) {
    o.require(c.passed && c.value >= 1 - kStateTol, c.name + ": " + c.detail);
    rows += !c.name.starts_with("noiseless");
  }
  o.require(rows == 16, std::to_string(rows) + " table rows");
  if (o.passed) o.detail = "16/16 rows and the noiseless path at fidelity 1";
  return o;
}

// True when the noisy channel state is one of the eight families and every
// pattern it produces is corrected back to the target.
bool recovered(const PureState& channel_state, Layout layout) {
  try {
    classify_family(channel_state, layout);
  } catch (const OutsideModelError&) {
    return false;
  }
  CircuitNetwork net = build_fanin();
  for (const auto& p : postselect_coincidence(propagate(net, with_trigger(channel_state)).output, net)) {
    PureState fixed = apply_correction(to_logical(p.state, net, p.pattern),
                                       correction_for_pattern(layout, p.pattern.label()).ops);
    if (fidelity(fixed, ghz_target()) < 1 - kStateTol) return false;
  }
  return true;
}

Outcome pauli_closure() {
  Outcome o;
  const PureState psi_plus = family_state({FamilyTag::kPsi, Sign::kPlus, Layout::kMixed});
  const PureState phi_plus = family_state({FamilyTag::kPsi, Sign::kPlus, Layout::kAligned});
  int closed = 0;
  int closed_aligned = 0;
  std::string first_miss;
  for (const PauliCombination& c : all_pauli_combinations()) {
    auto errors = c.errors();
    if (recovered(apply_paulis(psi_plus, errors), Layout::kMixed)) {
      ++closed;
    } else if (first_miss.empty()) {
      first_miss = c.label();
    }
    closed_aligned += recovered(apply_paulis(phi_plus, errors), Layout::kAligned);
  }
  o.passed = closed == 64;
  o.detail = std::to_string(closed) + "/64 combinations on psi+ stay in the family set";
  if (!o.passed) o.detail += " (first miss " + first_miss + ")";
  o.detail += "; aligned branch " + std::to_string(closed_aligned) + "/64";
  return o;
}

Outcome qnd_properties() {
  Outcome o;
  const PureState emission = dual_pass_emission();
  for (double phi : {0.0, 0.7}) {
    auto outcomes = homodyne_discriminate(tag_phases(emission, default_couplings()), phi);
    double total = 0.0;
    for (const auto& out : outcomes) {
      total += out.probability;
      for (const auto& [ket, amp] : out.state().terms()) {
        o.require(ket.total_photons() == 4, "photon number changed");
      }
    }
    o.require(outcomes.size() == 2, "two branches");
    o.require(std::abs(total - 1.0) < kStateTol, "branch probabilities sum to " + num(total));
    o.require(std::abs(outcomes[0].probability - 0.5) < kStateTol,
              "P(A) = " + num(outcomes[0].probability));
    o.require(std::abs(outcomes[1].probability - 0.5) < kStateTol,
              "P(B) = " + num(outcomes[1].probability));
    // Branch A keeps the uu/ll superposition once the phases are removed.
    const PureState expected_a =
        (std::sqrt(0.25) * two_pair_product(1, 1) + std::sqrt(0.25) * two_pair_product(2, 2)).normalized();
    const double fa = fidelity(feed_forward(outcomes[0]), expected_a);
    o.require(fa >= 1 - kStateTol, "branch A coherence " + num(fa));
  }
  // A pure superposition of the two +-theta classes goes entirely to A.
  const PureState sup = (two_pair_product(1, 1) + Complex(0, 1) * two_pair_product(2, 2)).normalized();
  auto outcomes = homodyne_discriminate(tag_phases(sup, default_couplings()), 1.3);
  o.require(std::abs(outcomes[0].probability - 1.0) < kStateTol, "superposition P(A)");
  o.require(fidelity(feed_forward(outcomes[0]), sup) >= 1 - kStateTol, "superposition coherence");
  if (o.passed) o.detail = "P(A) = P(B) = 1/2, branch A coherent, photon number kept";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  double worst = 0.0;
  std::size_t rails_used = 0;
  auto compare = [&](const CircuitNetwork& net, const PureState& input) {
    testing::DenseOracle oracle(net.elements());
    std::set<int> cols;
    for (const auto& [ket, amp] : input.terms()) {
      for (const auto& [rail, n] : ket.entries()) cols.insert(oracle.index(rail));
    }
    std::vector<Rail> rails;
    for (std::size_t r = 0; r < oracle.rails().size(); ++r) {
      for (int c : cols) {
        if (std::abs(oracle.transfer()(static_cast<Eigen::Index>(r), c)) > 0.0) {
          rails.push_back(oracle.rails()[r]);
          break;
        }
      }
    }
    rails_used = std::max(rails_used, rails.size());
    o.require(rails.size() <= 16, std::to_string(rails.size()) + " rails");
    PureState sparse = propagate(net, input).output;
    auto dense = oracle.evolve_onto(input, rails);
    for (const auto& [ket, amp] : dense) worst = std::max(worst, std::abs(sparse.amplitude(ket) - amp));
    for (const auto& [ket, amp] : sparse.terms()) {
      if (!dense.contains(ket)) worst = std::max(worst, std::abs(amp));
    }
  };
  const CircuitNetwork fig3 = build_fig3();
  compare(fig3, dual_pass_emission());
  for (const auto& out : homodyne_discriminate(tag_phases(dual_pass_emission(), default_couplings()))) {
    compare(fig3, feed_forward(out));
  }
  compare(build_ghzps(), dual_pass_emission());
  o.require(worst < kOracleTol, "worst entry " + num(worst));
  if (o.passed) {
    o.detail = std::to_string(rails_used) + " rails, worst entry deviation " + num(worst);
  }
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome dsl_fixtures() {
  Outcome o;
  const std::string dir = GHZSIM_FIXTURE_DIR;
  const std::pair<const char*, CircuitNetwork> cases[] = {{"fig1.onet", build_ghzps()},
                                                          {"fig3.onet", build_fig3()}};
  double worst = 0.0;
  for (const auto& [name, builtin] : cases) {
    const std::string text = read_file(dir + "/" + name);
    dsl::ParseResult r = dsl::parse(text);
    if (!std::holds_alternative<dsl::DslDocument>(r)) {
      o.require(false, std::string(name) + ": " + std::get<dsl::ParseError>(r).to_string());
      continue;
    }
    const auto& doc = std::get<dsl::DslDocument>(r);
    o.require(dsl::parse_or_throw(dsl::pretty_print(doc)) == doc, std::string(name) + " round trip");
    CircuitNetwork net = dsl::elaborate(doc);
    o.require(net.couplings == builtin.couplings && net.detectors == builtin.detectors,
              std::string(name) + " couplings/detectors");
    for (const char* m : {"a1", "b1", "a2", "b2"}) {
      for (Polarization p : {H, V}) {
        worst = std::max(worst, (propagate(net, single(m, p)).output -
                                 propagate(builtin, single(m, p)).output).norm());
      }
    }
    worst = std::max(worst, (propagate(net, dual_pass_emission()).output -
                             propagate(builtin, dual_pass_emission()).output).norm());
  }
  o.require(worst < kStateTol, "fixture/builder deviation " + num(worst));

  std::mt19937_64 rng(424242);
  const std::string base = read_file(dir + "/fig3.onet");
  int crashes = 0;
  for (int i = 0; i < kFuzzCases; ++i) {
    std::string text;
    if (i % 2 == 0) {
      text.resize(rng() % 120);
      for (char& c : text) c = static_cast<char>(rng() & 0xff);
    } else {
      text = base;
      for (int k = 0; k < 3; ++k) text[rng() % text.size()] = static_cast<char>(32 + rng() % 95);
    }
    try {
      dsl::parse(text);
    } catch (...) {
      ++crashes;
    }
  }
  o.require(crashes == 0, std::to_string(crashes) + " fuzz inputs threw");
  if (o.passed) {
    o.detail = "fixtures match builders (" + num(worst) + "), round trip exact, " +
               std::to_string(kFuzzCases) + " fuzz inputs";
  }
  return o;
}

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(GHZSIM_CLI_PATH) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  Outcome o;
  for (const char* args : {"verify-table1", "run --builtin fig3 --seed 7 --sample"}) {
    auto first = run_cli(args);
    auto second = run_cli(args);
    o.require(first.first == 0, std::string(args) + " exit " + std::to_string(first.first));
    o.require(!first.second.empty() && first == second, std::string(args) + " outputs differ");
  }
  if (o.passed) o.detail = "both commands byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"branch states", branch_states},
      {"component evolutions", component_maps},
      {"polarization/spatial factorization", factorization},
      {"fan-in evolution table", evolution_table},
      {"correction table closure", correction_table_closure},
      {"Pauli closure", pauli_closure},
      {"QND properties", qnd_properties},
      {"oracle equivalence", oracle_equivalence},
      {"DSL fixtures, fuzz and round trip", dsl_fixtures},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << "): " << o.detail << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
