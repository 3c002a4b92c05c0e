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

#include "ghzsim/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "ghzsim/sampling.hpp"

namespace ghzsim {

namespace {

constexpr double kDropProbability = 1e-24;

// One half of the GHZps device. `p` prefixes the internal modes, `trig` is
// the trigger arm and `out` the detector letter ("D" upper, "d" lower).
void add_half(std::vector<NetworkStep>& steps, const SpatialMode& a, const SpatialMode& b,
              const std::string& p, const std::string& trig, const std::string& out) {
  auto m = [&](const char* suffix) { return SpatialMode(p + suffix); };
  auto det = [&](const char* suffix) { return SpatialMode(out + suffix); };
  steps.emplace_back(make_pbs(a, std::nullopt, SpatialMode(trig), m("a")));
  steps.emplace_back(make_bs(m("a"), std::nullopt, m("a1"), m("a2")));
  steps.emplace_back(make_hwp90(m("a2")));
  steps.emplace_back(make_bs(b, std::nullopt, m("b1"), m("b2")));
  steps.emplace_back(make_pbs(m("b1"), std::nullopt, m("h"), m("v")));
  steps.emplace_back(make_pbs(m("h"), m("a1"), det("1"), det("1x")));
  steps.emplace_back(make_pbs(m("a2"), m("v"), det("2"), det("2x")));
  steps.emplace_back(make_route(m("b2"), det("3")));
}

SpatialMode slot_mode(int i) { return i == 0 ? logical::A : i == 1 ? logical::B : logical::C; }

std::vector<SpatialMode> single_modes(std::initializer_list<const char*> names) {
  return {names.begin(), names.end()};
}

}  // namespace

CircuitNetwork build_ghzps() {
  CircuitNetwork net;
  add_half(net.steps, modes::a1, modes::b1, "u", "T1", "D");
  add_half(net.steps, modes::a2, modes::b2, "l", "T2", "d");
  // Trigger eraser: which pass emitted the trigger photon must not be
  // recorded, so T1 and T2 are mixed on a balanced splitter and T is
  // postselected.
  net.steps.emplace_back(make_bs("T1", SpatialMode("T2"), "T", "Tx"));
  net.couplings = default_couplings();
  net.detectors = {{"T", single_modes({"T"})},
                   {"P1", single_modes({"D1", "d1"})},
                   {"P2", single_modes({"D2", "d2"})},
                   {"P3", single_modes({"D3", "d3"})}};
  return net;
}

CircuitNetwork build_fanin() {
  CircuitNetwork net;
  for (int i = 1; i <= 3; ++i) net.steps.emplace_back(ChannelMarker{i, channel_modes(i)});
  for (int i = 1; i <= 3; ++i) {
    net.steps.emplace_back(make_hwp90(SpatialMode("D" + std::to_string(i))));
  }
  net.detectors.push_back({"T", single_modes({"T"})});
  for (int i = 1; i <= 3; ++i) {
    const std::string n = std::to_string(i);
    net.steps.emplace_back(make_pbs(SpatialMode("d" + n), SpatialMode("D" + n),
                                    SpatialMode("e" + n), SpatialMode("E" + n)));
    net.detectors.push_back({"e" + n, {SpatialMode("e" + n)}});
    net.detectors.push_back({"E" + n, {SpatialMode("E" + n)}});
  }
  return net;
}

CircuitNetwork build_fig3() { return concatenate(build_ghzps(), build_fanin()); }

CircuitNetwork concatenate(const CircuitNetwork& first, const CircuitNetwork& second) {
  CircuitNetwork out = first;
  out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
  out.couplings.insert(out.couplings.end(), second.couplings.begin(), second.couplings.end());
  if (!second.detectors.empty()) out.detectors = second.detectors;
  if (second.source) out.source = second.source;
  if (second.noise) out.noise = second.noise;
  return out;
}

std::vector<PatternOutcome> postselect_coincidence(const PureState& state,
                                                   const CircuitNetwork& network) {
  const CoincidenceLayout layout = coincidence_layout(network);
  const auto& trigger_modes = network.detector(layout.trigger)->modes;
  std::vector<PatternOutcome> out;
  for (const auto& pattern : enumerate_patterns(layout)) {
    std::vector<OccupancyGroup> groups{{trigger_modes, 1}};
    for (std::size_t s = 0; s < layout.slots.size(); ++s) {
      for (const auto& name : layout.slots[s]) {
        groups.push_back({network.detector(name)->modes,
                          name == pattern.photon_groups[s] ? 1 : 0});
      }
    }
    Projection proj = project_occupancy(state, groups);
    if (proj.probability <= kDropProbability) continue;
    out.push_back({pattern, proj.probability, factor_out(proj.state, trigger_modes)});
  }
  return out;
}

PureState to_logical(const PureState& state, const CircuitNetwork& network,
                     const CoincidencePattern& pattern) {
  std::vector<std::pair<FockKet, Complex>> terms;
  for (const auto& [ket, amp] : state.terms()) {
    std::vector<FockKet::Entry> entries;
    int placed = 0;
    for (std::size_t s = 0; s < pattern.photon_groups.size(); ++s) {
      const DetectorGroup* group = network.detector(pattern.photon_groups[s]);
      if (group == nullptr) {
        throw std::invalid_argument("unknown detector group " + pattern.photon_groups[s]);
      }
      FockKet part = ket.restricted_to(group->modes);
      if (part.total_photons() != 1) {
        throw std::invalid_argument("ket " + ket.to_string() + " has no single photon in " +
                                    group->name);
      }
      entries.emplace_back(Rail{slot_mode(static_cast<int>(s)), part.entries()[0].first.pol}, 1);
      ++placed;
    }
    if (placed != ket.total_photons()) {
      throw std::invalid_argument("ket " + ket.to_string() + " has photons outside the pattern");
    }
    terms.emplace_back(FockKet(std::move(entries)), amp);
  }
  return PureState(std::move(terms));
}

std::string corrections_label(const Corrections& ops) {
  std::string out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out += ",";
    out += ops[i] ? "X" : "I";
  }
  return out;
}

const std::vector<CorrectionRule>& correction_table() {
  static const std::vector<CorrectionRule> table = [] {
    struct Row {
      FamilyTag tag;
      const char* pattern;
      Corrections ops;
    };
    using enum FamilyTag;
    constexpr bool I = false;
    constexpr bool X = true;
    const Row published[] = {
        {kPsi, "e1e2E3", {I, I, X}},  {kPsi, "E1E2e3", {I, X, I}},
        {kPsi0, "e1e2e3", {I, I, I}}, {kPsi0, "E1E2E3", {X, I, I}},
        {kPsi1, "E1e2e3", {X, I, I}}, {kPsi1, "e1E2E3", {I, I, I}},
        {kPsi2, "e1E2e3", {I, X, I}}, {kPsi2, "E1e2E3", {I, I, X}},
    };
    // Aligned layout: a pattern's corrections follow from which photons
    // left through the V port of their merging PBS.
    const Row aligned[] = {
        {kPsi, "e1e2E3", {I, I, I}},  {kPsi, "E1E2e3", {I, I, I}},
        {kPsi0, "e1e2e3", {I, I, X}}, {kPsi0, "E1E2E3", {I, I, X}},
        {kPsi1, "E1e2e3", {I, X, I}}, {kPsi1, "e1E2E3", {I, X, I}},
        {kPsi2, "e1E2e3", {X, I, I}}, {kPsi2, "E1e2E3", {X, I, I}},
    };
    std::vector<CorrectionRule> rules;
    for (auto [rows, layout] : {std::pair{&published, Layout::kMixed},
                                std::pair{&aligned, Layout::kAligned}}) {
      for (const Row& r : *rows) {
        for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
          rules.push_back({{r.tag, sign, layout}, r.pattern, r.ops, layout == Layout::kAligned});
        }
      }
    }
    return rules;
  }();
  return table;
}

const CorrectionRule& lookup_correction(const NoiseFamily& family, std::string_view pattern) {
  for (const auto& rule : correction_table()) {
    if (rule.family == family && rule.pattern == pattern) return rule;
  }
  throw std::invalid_argument("pattern " + std::string(pattern) + " cannot occur for " +
                              family.name());
}

const CorrectionRule& correction_for_pattern(Layout layout, std::string_view pattern) {
  for (const auto& rule : correction_table()) {
    if (rule.family.layout == layout && rule.pattern == pattern) return rule;
  }
  throw std::invalid_argument("no correction for pattern " + std::string(pattern));
}

PureState apply_correction(const PureState& logical_state, const Corrections& ops) {
  PureState out = logical_state;
  for (int i = 0; i < 3; ++i) {
    if (!ops[i]) continue;
    const SpatialMode mode = slot_mode(i);
    out = apply_pauli(out, PauliError{i + 1, PauliKind::kX}, std::span(&mode, 1));
  }
  return out;
}

PureState ghz_target() {
  const double r = 1.0 / std::sqrt(2.0);
  return PureState({{polarized("HHV", {logical::A, logical::B, logical::C}), r},
                    {polarized("VVH", {logical::A, logical::B, logical::C}), r}});
}

PureState ghzps_branch_a_literal() {
  return PureState({{polarized("HHV", {"D1", "D2", "D3"}), 0.5},
                    {polarized("VVH", {"D1", "D2", "D3"}), 0.5},
                    {polarized("HHV", {"d1", "d2", "d3"}), 0.5},
                    {polarized("VVH", {"d1", "d2", "d3"}), 0.5}});
}

PureState ghzps_branch_b_literal() {
  return PureState({{polarized("HHV", {"d1", "d2", "D3"}), 0.5},
                    {polarized("VVH", {"d1", "D2", "d3"}), 0.5},
                    {polarized("HHV", {"D1", "D2", "d3"}), 0.5},
                    {polarized("VVH", {"D1", "d2", "D3"}), 0.5}});
}

PureState fanin_output_literal(const NoiseFamily& family) {
  if (family.layout != Layout::kMixed) {
    throw std::invalid_argument("no published fan-in output for " + family.name());
  }
  struct Half {
    const char* pols[2];
    const char* pattern;
  };
  struct RowSpec {
    Half first;
    Half second;
  };
  static const RowSpec rows[] = {
      {{{"HHH", "VVV"}, "e1e2E3"}, {{"HVV", "VHH"}, "E1E2e3"}},
      {{{"HHV", "VVH"}, "e1e2e3"}, {{"VHV", "HVH"}, "E1E2E3"}},
      {{{"VHV", "HVH"}, "E1e2e3"}, {{"HHV", "VVH"}, "e1E2E3"}},
      {{{"HVV", "VHH"}, "e1E2e3"}, {{"HHH", "VVV"}, "E1e2E3"}},
  };
  const RowSpec& row = rows[static_cast<int>(family.tag)];
  auto modes_of = [](std::string_view pattern) {
    std::vector<SpatialMode> ms;
    for (std::size_t i = 0; i < pattern.size(); i += 2) ms.emplace_back(std::string(pattern.substr(i, 2)));
    return ms;
  };
  const double sign = family.sign == Sign::kPlus ? 1.0 : -1.0;
  std::vector<std::pair<FockKet, Complex>> terms;
  for (auto [half, s] : {std::pair{&row.first, 1.0}, std::pair{&row.second, sign}}) {
    auto ms = modes_of(half->pattern);
    for (const char* pols : half->pols) terms.emplace_back(polarized(pols, ms), 0.5 * s);
  }
  return PureState(std::move(terms));
}

namespace {

// Coincidence at the channel markers: trigger plus one photon per channel.
std::optional<Projection> channel_projection(const PureState& state,
                                             const CircuitNetwork& network) {
  std::vector<OccupancyGroup> groups;
  const DetectorGroup* trigger = network.detector("T");
  if (trigger == nullptr) return std::nullopt;
  groups.push_back({trigger->modes, 1});
  for (const auto& step : network.steps) {
    if (const auto* m = std::get_if<ChannelMarker>(&step)) groups.push_back({m->modes, 1});
  }
  Projection proj = project_occupancy(state, groups);
  if (proj.probability <= kDropProbability) return proj;
  proj.state = factor_out(proj.state, trigger->modes);
  return proj;
}

}  // namespace

std::vector<BranchRun> run_network(const CircuitNetwork& network, const RunOptions& options) {
  validate(options.weights);
  const ProtocolParams& params = options.params;
  const TaggedState tagged =
      tag_phases(dual_pass_emission(options.weights), network.couplings, params.theta);
  const double phi = measurement_phase(params.alpha, params.theta, params.homodyne_x);
  std::vector<BranchRun> out;
  for (const QndOutcome& outcome : homodyne_discriminate(tagged, phi)) {
    if (outcome.probability <= kDropProbability) continue;
    BranchRun run;
    run.branch = outcome.branch;
    run.branch_probability = outcome.probability;
    run.phi = outcome.phi;
    Propagation prop = propagate(network, feed_forward(outcome), options.errors);
    if (prop.at_channel) {
      if (auto proj = channel_projection(*prop.at_channel, network);
          proj && proj->probability > kDropProbability) {
        run.channel_probability = proj->probability;
        run.channel_state = proj->state;
        try {
          run.family = classify_family(proj->state, outcome.branch == Branch::kA
                                                        ? Layout::kAligned
                                                        : Layout::kMixed);
        } catch (const OutsideModelError&) {
          run.family.reset();
        }
      }
    }
    run.patterns = postselect_coincidence(prop.output, network);
    out.push_back(std::move(run));
  }
  return out;
}

std::vector<BranchRun> run_ghzps(const RunOptions& options) {
  return run_network(build_ghzps(), options);
}

RunReport run_full(const CircuitNetwork& network, const RunOptions& options) {
  RunReport report;
  report.options = options;
  report.probe_overlap = probe_distinguishability(options.params.alpha, options.params.theta);
  for (const auto& d : network.detectors) {
    if (d.modes.size() != 1) {
      throw std::invalid_argument("detector group " + d.name +
                                  " spans several modes; the corrected run needs the fan-in stage");
    }
  }
  double weighted = 0.0;
  report.min_fidelity = 1.0;
  for (const BranchRun& run : run_network(network, options)) {
    const Layout layout = run.branch == Branch::kA ? Layout::kAligned : Layout::kMixed;
    for (const PatternOutcome& po : run.patterns) {
      ReportEntry e;
      e.branch = run.branch;
      e.pattern = po.pattern;
      e.branch_probability = run.branch_probability;
      e.pattern_probability = po.probability;
      e.success_probability = run.branch_probability * po.probability;
      e.family = run.family;
      const std::string label = po.pattern.label();
      try {
        e.corrections = run.family ? lookup_correction(*run.family, label).ops
                                   : correction_for_pattern(layout, label).ops;
      } catch (const std::invalid_argument&) {
        e.corrections.reset();
      }
      e.conditional_state = to_logical(po.state, network, po.pattern);
      e.corrected_state =
          e.corrections ? apply_correction(e.conditional_state, *e.corrections) : e.conditional_state;
      e.fidelity = fidelity(e.corrected_state, ghz_target());
      report.total_success_probability += e.success_probability;
      weighted += e.success_probability * e.fidelity;
      report.min_fidelity = std::min(report.min_fidelity, e.fidelity);
      report.entries.push_back(std::move(e));
    }
  }
  if (report.entries.empty()) report.min_fidelity = 0.0;
  if (report.total_success_probability > 0.0) {
    report.mean_fidelity = weighted / report.total_success_probability;
  }
  return report;
}

RunReport run_full(const RunOptions& options) { return run_full(build_fig3(), options); }

MixtureReport run_mixture(const CircuitNetwork& network, const RunOptions& options, double p) {
  MixtureReport out;
  out.p = p;
  for (auto& wc : depolarizing_mixture(p)) {
    out.components.push_back({wc.weight, wc.combination, {}});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.components.size(); i = next++) {
      RunOptions o = options;
      o.errors = out.components[i].combination.errors();
      out.components[i].report = run_full(network, o);
    }
  };
  const unsigned n = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::future<void>> tasks;
  for (unsigned t = 0; t < n; ++t) tasks.push_back(std::async(std::launch::async, worker));
  for (auto& t : tasks) t.get();
  for (const auto& c : out.components) {
    out.mean_fidelity += c.weight * c.report.mean_fidelity;
    bool in_model = std::all_of(c.report.entries.begin(), c.report.entries.end(),
                                [](const ReportEntry& e) { return e.family.has_value(); });
    if (in_model) out.in_model_weight += c.weight;
  }
  return out;
}

const ReportEntry& sample_entry(const RunReport& report, std::uint64_t seed) {
  std::vector<double> weights;
  for (const auto& e : report.entries) weights.push_back(e.success_probability);
  return report.entries[sample_index(weights, seed)];
}

}  // namespace ghzsim
