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

// Down-conversion sources: single singlet pairs and the double-pass
// two-pair emission over the upper (a1, b1) and lower (a2, b2) modes.

#pragma once

#include "ghzsim/state.hpp"

namespace ghzsim {

namespace modes {
inline const SpatialMode a1{"a1"};
inline const SpatialMode b1{"b1"};
inline const SpatialMode a2{"a2"};
inline const SpatialMode b2{"b2"};
}  // namespace modes

enum class PairCase { kUpperUpper, kLowerLower, kMixed };

// Amplitude-squared weights of the three two-pair cases.
struct CaseWeights {
  double upper_upper = 0.25;
  double lower_lower = 0.25;
  double mixed = 0.5;

  double operator[](PairCase c) const;
  bool operator==(const CaseWeights&) const = default;
};

// Throws std::invalid_argument on negative weights or a sum away from 1.
void validate(const CaseWeights& weights);

// (|H>_a|V>_b - |V>_a|H>_b)/sqrt2.
PureState pdc_pair(const SpatialMode& a, const SpatialMode& b);

// Normalized two-pair state for pair indices i, j in {1, 2}. Pairs in the
// same modes are combined with bosonic weights before normalizing.
PureState two_pair_product(int i, int j);

// sqrt(w_uu) * two_pair(1,1) + sqrt(w_ll) * two_pair(2,2)
//   + sqrt(w_mixed) * two_pair(1,2).
PureState dual_pass_emission(const CaseWeights& weights = {});

}  // namespace ghzsim
