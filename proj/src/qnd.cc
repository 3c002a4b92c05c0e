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

#include "ghzsim/qnd.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ghzsim/sampling.hpp"
#include "ghzsim/source.hpp"

namespace ghzsim {

namespace {

constexpr double kTagTolerance = 1e-9;

int tag_class(double units) {
  for (int c : {-1, 0, 1}) {
    if (std::abs(units - c) <= kTagTolerance) return c;
  }
  throw std::invalid_argument("probe phase " + std::to_string(units) +
                              " theta is outside {-theta, 0, +theta}");
}

}  // namespace

std::vector<KerrCoupling> default_couplings() {
  using enum Polarization;
  return {
      {{modes::a1, H}, 0.5},
      {{modes::a1, V}, 0.5},
      {{modes::a2, H}, -0.5},
      {{modes::a2, V}, -0.5},
  };
}

TaggedState tag_phases(const PureState& state, const std::vector<KerrCoupling>& couplings,
                       double theta) {
  TaggedState out{state, {}, theta};
  for (const auto& [ket, amp] : state.terms()) {
    double units = 0.0;
    for (const auto& c : couplings) units += c.phase_units * ket.count(c.rail);
    out.tag_units[ket] = units;
  }
  return out;
}

std::string to_string(Branch branch) { return branch == Branch::kA ? "A" : "B"; }

std::vector<QndOutcome> homodyne_discriminate(const TaggedState& tagged, double phi) {
  PureState::TermMap a_terms;
  PureState::TermMap b_terms;
  for (const auto& [ket, amp] : tagged.state.terms()) {
    auto it = tagged.tag_units.find(ket);
    int c = tag_class(it == tagged.tag_units.end() ? 0.0 : it->second);
    if (c == 0) {
      b_terms.emplace(ket, amp);
    } else {
      a_terms.emplace(ket, amp * std::polar(1.0, c * phi));
    }
  }
  std::vector<QndOutcome> out;
  for (auto [branch, terms] : {std::pair{Branch::kA, &a_terms}, std::pair{Branch::kB, &b_terms}}) {
    QndOutcome o;
    o.branch = branch;
    o.phi = branch == Branch::kA ? phi : 0.0;
    o.conditional.theta = tagged.theta;
    PureState part(*terms);
    o.probability = part.norm_squared();
    if (!part.empty()) {
      o.conditional.state = part.normalized();
      for (const auto& [ket, amp] : o.conditional.state.terms()) {
        o.conditional.tag_units[ket] = tagged.tag_units.at(ket);
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

PureState feed_forward(const QndOutcome& outcome) {
  if (outcome.branch == Branch::kB || outcome.phi == 0.0) return outcome.state();
  PureState::TermMap terms;
  for (const auto& [ket, amp] : outcome.state().terms()) {
    int c = tag_class(outcome.conditional.tag_units.at(ket));
    terms.emplace(ket, amp * std::polar(1.0, -c * outcome.phi));
  }
  return PureState(std::move(terms));
}

double measurement_phase(double alpha, double theta, double x) {
  return alpha * std::sin(theta) * (x - alpha * std::cos(theta));
}

double probe_distinguishability(double alpha, double theta) {
  if (alpha < 0) throw std::invalid_argument("probe amplitude must be nonnegative");
  return std::exp(-alpha * alpha * (1.0 - std::cos(theta)));
}

std::size_t sample_outcome(const std::vector<QndOutcome>& outcomes, std::uint64_t seed) {
  std::vector<double> weights;
  for (const auto& o : outcomes) weights.push_back(o.probability);
  return sample_index(weights, seed);
}

}  // namespace ghzsim
