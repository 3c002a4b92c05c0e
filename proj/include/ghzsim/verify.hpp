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

// Self-checks of the generator against the published states and tables.

#pragma once

#include <string>
#include <vector>

#include "ghzsim/density.hpp"
#include "ghzsim/pipeline.hpp"

namespace ghzsim {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string detail;
};

bool all_passed(const std::vector<Check>& checks);

// One fan-in pattern of a family fed straight into build_fanin().
struct FaninRow {
  NoiseFamily family;
  std::string pattern;
  double probability = 0.0;
  Corrections ops{};
  double fidelity = 0.0;  // corrected, with ghz_target()
};

// Both patterns of every family of `layout`, plus any other pattern with
// nonzero probability (which would be a wiring fault).
std::vector<FaninRow> evaluate_fanin(Layout layout);

// The family state with a trigger photon on T, as the fan-in stage sees it.
PureState with_trigger(const PureState& state);

// The 16 published correction rows, then the noiseless end-to-end rows.
std::vector<Check> verify_table1(const RunOptions& options = {});
// GHZps branch states and the fan-in outputs of all eight psi families.
std::vector<Check> verify_states(const RunOptions& options = {});
// Polarization/spatial factorization of the two GHZps branch states.
std::vector<Check> verify_entanglement(const RunOptions& options = {});

// Logical-position cut used for the GHZps outputs: photon i in {D_i, d_i}.
Bipartition ghzps_polarization_spatial();

}  // namespace ghzsim
