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

// The GHZ generator: dual-pass source, the GHZps network, QND branch
// discrimination, the fan-in stage, coincidence postselection and the
// bit-flip corrections that finish the GHZ state.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghzsim/network.hpp"
#include "ghzsim/noise.hpp"
#include "ghzsim/qnd.hpp"
#include "ghzsim/source.hpp"
#include "ghzsim/state.hpp"

namespace ghzsim {

// Logical photon modes used once the spatial pattern is known.
namespace logical {
inline const SpatialMode A{"A"};
inline const SpatialMode B{"B"};
inline const SpatialMode C{"C"};
}  // namespace logical

// The GHZps device. Detector groups are T and P1..P3, where P_i = {D_i, d_i}.
CircuitNetwork build_ghzps();
// Channel markers, HWP90 on D1..D3 and the three merging PBSs, with detector
// groups T and e1, E1, ..., E3.
CircuitNetwork build_fanin();
// build_ghzps followed by build_fanin.
CircuitNetwork build_fig3();

// Steps and couplings of `first` then `second`; detectors, source and noise
// of `second` when present, else of `first`.
CircuitNetwork concatenate(const CircuitNetwork& first, const CircuitNetwork& second);

struct PatternOutcome {
  CoincidencePattern pattern;
  double probability = 0.0;  // relative to the (normalized) input
  PureState state;           // normalized, trigger photon factored out
};

// Projects onto exactly one photon in the trigger group and one photon in
// one group of every slot, for every pattern of the layout. Patterns with
// probability at or below 1e-24 are dropped.
std::vector<PatternOutcome> postselect_coincidence(const PureState& state,
                                                   const CircuitNetwork& network);

// Rewrites each ket of a pattern-conditioned state onto A, B, C: the photon
// found in slot i keeps its polarization and moves to logical mode i.
PureState to_logical(const PureState& state, const CircuitNetwork& network,
                     const CoincidencePattern& pattern);

// Per-photon bit-flip (true) or identity (false) for A, B, C.
using Corrections = std::array<bool, 3>;
std::string corrections_label(const Corrections& ops);

struct CorrectionRule {
  NoiseFamily family;
  std::string pattern;  // photon-group label, e.g. "e1e2E3"
  Corrections ops{};
  // True for rows derived from the network wiring rather than the
  // published table (the aligned-layout branch).
  bool derived = false;
};

// The 16 published rows (eight psi families, two patterns each) followed by
// the 16 derived rows of the aligned layout.
const std::vector<CorrectionRule>& correction_table();

// Throws std::invalid_argument when the pattern cannot occur for the family.
const CorrectionRule& lookup_correction(const NoiseFamily& family, std::string_view pattern);

// Every pattern label occurs for exactly one family tag per layout and the
// two signs share corrections, so the table can also be keyed by pattern.
const CorrectionRule& correction_for_pattern(Layout layout, std::string_view pattern);

PureState apply_correction(const PureState& logical_state, const Corrections& ops);

// (|HHV> + |VVH>)/sqrt2 on A, B, C.
PureState ghz_target();
// The branch-A GHZps output: 1/2(|HHV> + |VVH>)_{D1D2D3} + 1/2(|HHV> + |VVH>)_{d1d2d3}.
PureState ghzps_branch_a_literal();
// The branch-B GHZps output, term by term as published.
PureState ghzps_branch_b_literal();
// Published fan-in output of a psi family (kMixed layout only), with the
// sign between the two pattern halves.
PureState fanin_output_literal(const NoiseFamily& family);

struct RunOptions {
  CaseWeights weights;
  ProtocolParams params;
  std::vector<PauliError> errors;
};

struct BranchRun {
  Branch branch = Branch::kB;
  double branch_probability = 0.0;
  double phi = 0.0;
  // Coincidence-conditioned state where the channel markers sit (only for
  // networks with channels), with its family when it has one.
  std::optional<PureState> channel_state;
  double channel_probability = 0.0;
  std::optional<NoiseFamily> family;
  std::vector<PatternOutcome> patterns;
};

// Source -> QND -> feed-forward -> network -> postselection. Branches with
// zero probability are omitted.
std::vector<BranchRun> run_network(const CircuitNetwork& network, const RunOptions& options);

// build_ghzps run: one entry per branch with the single P1P2P3 pattern.
std::vector<BranchRun> run_ghzps(const RunOptions& options = {});

struct ReportEntry {
  Branch branch = Branch::kB;
  CoincidencePattern pattern;
  double branch_probability = 0.0;
  double pattern_probability = 0.0;  // given the branch
  double success_probability = 0.0;  // branch x pattern
  std::optional<NoiseFamily> family;
  std::optional<Corrections> corrections;
  PureState conditional_state;  // logical A, B, C before correction
  PureState corrected_state;    // logical A, B, C
  double fidelity = 0.0;        // with ghz_target()
};

struct RunReport {
  RunOptions options;
  std::vector<ReportEntry> entries;
  double total_success_probability = 0.0;
  // Success-weighted mean fidelity.
  double mean_fidelity = 0.0;
  double min_fidelity = 0.0;
  double probe_overlap = 0.0;
};

// Runs a fan-in network (channels plus e/E detector groups) end to end and
// applies the pattern corrections.
RunReport run_full(const CircuitNetwork& network, const RunOptions& options);
RunReport run_full(const RunOptions& options = {});

struct MixtureComponent {
  double weight = 0.0;
  PauliCombination combination;
  RunReport report;
};

struct MixtureReport {
  double p = 0.0;
  std::vector<MixtureComponent> components;
  // sum_c weight_c * mean_fidelity_c.
  double mean_fidelity = 0.0;
  // Weight of combinations whose channel state stays inside the family set.
  double in_model_weight = 0.0;
};

// Independent depolarization with probability p per photon. Components run
// in parallel; their order follows depolarizing_mixture.
MixtureReport run_mixture(const CircuitNetwork& network, const RunOptions& options, double p);

// Draws one entry by success probability.
const ReportEntry& sample_entry(const RunReport& report, std::uint64_t seed);

}  // namespace ghzsim
