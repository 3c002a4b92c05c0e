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

#include "ghzsim/source.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzsim {

double CaseWeights::operator[](PairCase c) const {
  switch (c) {
    case PairCase::kUpperUpper:
      return upper_upper;
    case PairCase::kLowerLower:
      return lower_lower;
    case PairCase::kMixed:
      return mixed;
  }
  return 0.0;
}

void validate(const CaseWeights& weights) {
  if (weights.upper_upper < 0 || weights.lower_lower < 0 || weights.mixed < 0) {
    throw std::invalid_argument("case weights must be nonnegative");
  }
  double sum = weights.upper_upper + weights.lower_lower + weights.mixed;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("case weights must sum to 1");
  }
}

PureState pdc_pair(const SpatialMode& a, const SpatialMode& b) {
  if (a == b) throw std::invalid_argument("pdc_pair needs two distinct modes");
  const double r = 1.0 / std::sqrt(2.0);
  using enum Polarization;
  return PureState({
      {FockKet::of({{a, H}, {b, V}}), r},
      {FockKet::of({{a, V}, {b, H}}), -r},
  });
}

PureState two_pair_product(int i, int j) {
  auto pair = [](int k) {
    if (k == 1) return pdc_pair(modes::a1, modes::b1);
    if (k == 2) return pdc_pair(modes::a2, modes::b2);
    throw std::invalid_argument("pair index must be 1 or 2");
  };
  return bosonic_product(pair(i), pair(j)).normalized();
}

PureState dual_pass_emission(const CaseWeights& weights) {
  validate(weights);
  PureState out;
  if (weights.upper_upper > 0) {
    out = out + two_pair_product(1, 1).scaled(std::sqrt(weights.upper_upper));
  }
  if (weights.lower_lower > 0) {
    out = out + two_pair_product(2, 2).scaled(std::sqrt(weights.lower_lower));
  }
  if (weights.mixed > 0) {
    out = out + two_pair_product(1, 2).scaled(std::sqrt(weights.mixed));
  }
  return out;
}

}  // namespace ghzsim
