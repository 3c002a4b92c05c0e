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

// Cross-Kerr QND detection on the a1/a2 modes.
//
// Each signal ket is tagged with the probe phase it imprints (a multiple of
// theta). An X-homodyne readout separates |phase| = theta (branch A: both
// pairs in the same modes) from phase 0 (branch B: one pair per pass) but
// not +theta from -theta, so branch A keeps its coherence up to the
// measurement-induced phases e^{+-i phi(x)}, which feed-forward removes.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ghzsim/state.hpp"

namespace ghzsim {

inline constexpr double kDefaultTheta = 0.01;
// alpha^2 = 1e5.
inline constexpr double kDefaultAlpha = 316.22776601683796;

struct KerrCoupling {
  Rail rail;
  double phase_units = 0.0;  // probe phase per photon, in units of theta

  bool operator==(const KerrCoupling&) const = default;
};

// +theta/2 per photon on both a1 rails, -theta/2 on both a2 rails: two pairs
// in a1 give +theta, two in a2 give -theta, one photon in each gives 0.
std::vector<KerrCoupling> default_couplings();

struct TaggedState {
  PureState state;
  std::map<FockKet, double> tag_units;  // probe phase per ket, units of theta
  double theta = kDefaultTheta;
};

TaggedState tag_phases(const PureState& state, const std::vector<KerrCoupling>& couplings,
                       double theta = kDefaultTheta);

enum class Branch { kA, kB };
std::string to_string(Branch branch);

struct QndOutcome {
  Branch branch = Branch::kB;
  double probability = 0.0;
  // Conditional branch state, carrying e^{+i phi} on +theta kets and
  // e^{-i phi} on -theta kets. Empty when probability is zero.
  TaggedState conditional;
  double phi = 0.0;

  const PureState& state() const { return conditional.state; }
};

// Returns the A outcome then the B outcome. Throws std::invalid_argument if
// any tag is outside {-1, 0, +1} theta (a miswired network).
std::vector<QndOutcome> homodyne_discriminate(const TaggedState& tagged, double phi = 0.0);

// Removes the recorded phases of a branch-A outcome. Branch B passes
// through unchanged.
PureState feed_forward(const QndOutcome& outcome);

// Phase picked up by the +theta component for X-quadrature result x, with
// X = a + a^dagger and a real probe amplitude alpha.
double measurement_phase(double alpha, double theta, double x);

// |<alpha|alpha e^{i theta}>| = exp(-alpha^2 (1 - cos theta)).
double probe_distinguishability(double alpha, double theta);

// Draws one outcome index with probability weights, from a 64-bit seed.
std::size_t sample_outcome(const std::vector<QndOutcome>& outcomes, std::uint64_t seed);

}  // namespace ghzsim
