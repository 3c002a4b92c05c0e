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

#include "ghzsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ghzsim/density.hpp"

namespace ghzsim {

namespace {

constexpr double kExact = 1e-12;

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

Check fidelity_check(std::string name, double f) {
  return {std::move(name), f >= 1.0 - kExact, f, "fidelity " + fixed12(f)};
}

const BranchRun* find_branch(const std::vector<BranchRun>& runs, Branch b) {
  for (const auto& r : runs) {
    if (r.branch == b) return &r;
  }
  return nullptr;
}

}  // namespace

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

PureState with_trigger(const PureState& state) {
  std::vector<std::pair<FockKet, Complex>> terms;
  for (const auto& [ket, amp] : state.terms()) {
    terms.emplace_back(ket.with_photon(Rail{"T", Polarization::H}), amp);
  }
  return PureState(std::move(terms));
}

std::vector<FaninRow> evaluate_fanin(Layout layout) {
  const CircuitNetwork fanin = build_fanin();
  std::vector<FaninRow> rows;
  for (const NoiseFamily& family : all_families(layout)) {
    const PureState out = propagate(fanin, with_trigger(family_state(family))).output;
    for (const PatternOutcome& po : postselect_coincidence(out, fanin)) {
      FaninRow row{family, po.pattern.label(), po.probability, {}, 0.0};
      try {
        row.ops = lookup_correction(family, row.pattern).ops;
      } catch (const std::invalid_argument&) {
        rows.push_back(row);  // fidelity 0 flags the unexpected pattern
        continue;
      }
      row.fidelity =
          fidelity(apply_correction(to_logical(po.state, fanin, po.pattern), row.ops), ghz_target());
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<Check> verify_table1(const RunOptions& options) {
  std::vector<Check> checks;
  for (const FaninRow& row : evaluate_fanin(Layout::kMixed)) {
    Check c = fidelity_check(row.family.name() + " " + row.pattern, row.fidelity);
    c.passed = c.passed && std::abs(row.probability - 0.5) <= kExact;
    c.detail = corrections_label(row.ops) + " p=" + fixed12(row.probability) + " " + c.detail;
    checks.push_back(std::move(c));
  }
  for (const ReportEntry& e : run_full(options).entries) {
    if (e.branch != Branch::kB) continue;
    Check c = fidelity_check("noiseless psi+ " + e.pattern.label(), e.fidelity);
    c.detail = (e.corrections ? corrections_label(*e.corrections) : "-") + " " + c.detail;
    checks.push_back(std::move(c));
  }
  return checks;
}

std::vector<Check> verify_states(const RunOptions& options) {
  std::vector<Check> checks;
  const auto runs = run_ghzps(options);
  const std::pair<Branch, PureState> expected[] = {
      {Branch::kA, ghzps_branch_a_literal()},
      {Branch::kB, ghzps_branch_b_literal()},
  };
  for (const auto& [branch, literal] : expected) {
    const BranchRun* run = find_branch(runs, branch);
    double f = (run && run->patterns.size() == 1) ? fidelity(run->patterns[0].state, literal) : 0.0;
    checks.push_back(fidelity_check("GHZps branch " + to_string(branch), f));
    if (run && run->patterns.size() == 1) {
      double worst = 0.0;
      for (const auto& [ket, amp] : run->patterns[0].state.terms()) {
        worst = std::max(worst, std::abs(std::abs(amp) - 0.5));
      }
      checks.push_back({"GHZps branch " + to_string(branch) + " amplitudes",
                        worst <= kExact && run->patterns[0].state.size() == 4, worst,
                        std::to_string(run->patterns[0].state.size()) + " kets, |amp| = 0.5"});
    }
  }
  const CircuitNetwork fanin = build_fanin();
  for (const NoiseFamily& family : all_families(Layout::kMixed)) {
    PureState out = factor_out(propagate(fanin, with_trigger(family_state(family))).output,
                               std::vector<SpatialMode>{"T"});
    checks.push_back(fidelity_check("fan-in " + family.name(),
                                    fidelity(out, fanin_output_literal(family))));
  }
  // The aligned branch: both patterns must carry (|HHV> + |VVH>)/sqrt2.
  const CircuitNetwork fig3 = build_fig3();
  RunOptions o = options;
  o.errors.clear();
  for (const BranchRun& run : run_network(fig3, o)) {
    if (run.branch != Branch::kA) continue;
    for (const PatternOutcome& po : run.patterns) {
      checks.push_back(fidelity_check("branch A " + po.pattern.label(),
                                      fidelity(to_logical(po.state, fig3, po.pattern), ghz_target())));
    }
  }
  return checks;
}

Bipartition ghzps_polarization_spatial() {
  return polarization_spatial({{"D1", "d1"}, {"D2", "d2"}, {"D3", "d3"}});
}

std::vector<Check> verify_entanglement(const RunOptions& options) {
  std::vector<Check> checks;
  const Bipartition cut = ghzps_polarization_spatial();
  const auto runs = run_ghzps(options);
  for (Branch branch : {Branch::kA, Branch::kB}) {
    const BranchRun* run = find_branch(runs, branch);
    if (!run || run->patterns.size() != 1) {
      checks.push_back({"branch " + to_string(branch), false, 0.0, "branch missing"});
      continue;
    }
    const PureState& s = run->patterns[0].state;
    SchmidtDecomposition sd = schmidt(s, cut);
    double defect = factorization_defect(s, cut);
    double purity =
        partial_trace(DensityOperator::from_pure(s), cut, kPolarization).purity();
    const std::string b = "branch " + to_string(branch);
    if (branch == Branch::kA) {
      checks.push_back({b + " Schmidt rank", sd.rank == 1, static_cast<double>(sd.rank),
                        "rank " + std::to_string(sd.rank)});
      checks.push_back({b + " factorization", defect < kExact, defect,
                        "max |rho - rho_P x rho_S| = " + std::to_string(defect)});
    } else {
      bool coeffs = sd.rank == 2 && std::all_of(sd.coefficients.begin(), sd.coefficients.end(),
                                                [](double c) {
                                                  return std::abs(c - 1.0 / std::sqrt(2.0)) <= kExact;
                                                });
      checks.push_back({b + " Schmidt rank", coeffs, static_cast<double>(sd.rank),
                        "rank " + std::to_string(sd.rank) + ", coefficients 1/sqrt2"});
      checks.push_back({b + " reduced purity", std::abs(purity - 0.5) <= kExact, purity,
                        "purity " + fixed12(purity)});
      checks.push_back({b + " does not factorize", defect > 1e-3, defect,
                        "max |rho - rho_P x rho_S| = " + fixed12(defect)});
    }
  }
  return checks;
}

}  // namespace ghzsim
