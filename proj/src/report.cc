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

#include "ghzsim/report.hpp"

#include "ghzsim/state_json.hpp"

namespace ghzsim {

using nlohmann::json;

json to_json(const NoiseFamily& family) { return family.name(); }

json to_json(const CoincidencePattern& pattern) {
  json groups = json::array({pattern.trigger});
  for (const auto& g : pattern.photon_groups) groups.push_back(g);
  return {{"groups", groups}, {"label", pattern.label()}};
}

json to_json(const RunOptions& options) {
  NoiseSpec noise{options.errors, std::nullopt};
  return {{"weights",
           {options.weights.upper_upper, options.weights.lower_lower, options.weights.mixed}},
          {"theta", options.params.theta},
          {"alpha", options.params.alpha},
          {"homodyne_x", options.params.homodyne_x},
          {"noise", noise.to_string()}};
}

json to_json(const ReportEntry& e) {
  return {{"branch", to_string(e.branch)},
          {"pattern", to_json(e.pattern)},
          {"branch_probability", e.branch_probability},
          {"pattern_probability", e.pattern_probability},
          {"probability", e.success_probability},
          {"family", e.family ? json(e.family->name()) : json(nullptr)},
          {"corrections", e.corrections ? json(corrections_label(*e.corrections)) : json(nullptr)},
          {"state_dump", to_json(e.conditional_state)},
          {"corrected_state", to_json(e.corrected_state)},
          {"fidelity", e.fidelity}};
}

json to_json(const RunReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) entries.push_back(to_json(e));
  return {{"options", to_json(report.options)},
          {"entries", entries},
          {"total_probability", report.total_success_probability},
          {"mean_fidelity", report.mean_fidelity},
          {"min_fidelity", report.min_fidelity},
          {"probe_overlap", report.probe_overlap}};
}

json to_json(const MixtureReport& report) {
  json comps = json::array();
  for (const auto& c : report.components) {
    json families = json::array();
    for (const auto& e : c.report.entries) {
      families.push_back(e.family ? json(e.family->name()) : json(nullptr));
    }
    comps.push_back({{"weight", c.weight},
                     {"paulis", c.combination.label()},
                     {"mean_fidelity", c.report.mean_fidelity},
                     {"families", families}});
  }
  return {{"p", report.p},
          {"components", comps},
          {"mean_fidelity", report.mean_fidelity},
          {"in_model_weight", report.in_model_weight}};
}

json ghzps_to_json(const std::vector<BranchRun>& runs, const RunOptions& options) {
  json branches = json::array();
  for (const auto& r : runs) {
    const PureState literal =
        r.branch == Branch::kA ? ghzps_branch_a_literal() : ghzps_branch_b_literal();
    for (const auto& p : r.patterns) {
      branches.push_back({{"branch", to_string(r.branch)},
                          {"branch_probability", r.branch_probability},
                          {"pattern", to_json(p.pattern)},
                          {"coincidence_probability", p.probability},
                          {"probability", r.branch_probability * p.probability},
                          {"state_dump", to_json(p.state)},
                          {"fidelity", fidelity(p.state, literal)}});
    }
  }
  return {{"options", to_json(options)}, {"branches", branches}};
}

json to_json(const Check& check) {
  return {{"name", check.name},
          {"passed", check.passed},
          {"value", check.value},
          {"detail", check.detail}};
}

json to_json(const std::vector<Check>& checks) {
  json rows = json::array();
  for (const auto& c : checks) rows.push_back(to_json(c));
  return {{"checks", rows}, {"passed", all_passed(checks)}};
}

}  // namespace ghzsim
