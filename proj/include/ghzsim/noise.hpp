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

// Polarization noise on the three channel photons and the noise families
// it produces.
//
// Photon i (A, B, C for i = 1, 2, 3) travels in d_i or D_i. A Pauli error
// acts on the polarization of whichever of the two it occupies; spatial
// coherence is untouched.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ghzsim/state.hpp"

namespace ghzsim {

enum class PauliKind { kX, kY, kZ };

char to_char(PauliKind kind);

struct PauliError {
  int photon = 1;  // 1..3
  PauliKind kind = PauliKind::kX;

  bool operator==(const PauliError&) const = default;
};

// {d_i, D_i}.
std::vector<SpatialMode> channel_modes(int photon);

// X swaps H and V, Z negates V, Y = Z X. Throws std::invalid_argument for a
// photon index outside 1..3.
PureState apply_pauli(const PureState& state, const PauliError& err);
PureState apply_pauli(const PureState& state, const PauliError& err,
                      std::span<const SpatialMode> modes);
PureState apply_paulis(const PureState& state, std::span<const PauliError> errors);

enum class FamilyTag { kPsi, kPsi0, kPsi1, kPsi2 };
enum class Sign { kPlus, kMinus };

// Which spatial structure the family lives on. kMixed is the one-pair-per-
// pass state (photons split between d and D); kAligned is the state where
// all three photons share d or D.
enum class Layout { kMixed, kAligned };

struct NoiseFamily {
  FamilyTag tag = FamilyTag::kPsi;
  Sign sign = Sign::kPlus;
  Layout layout = Layout::kMixed;

  // "psi+", "psi0-", ... for kMixed; "phi+", "phi1-", ... for kAligned.
  std::string name() const;
  bool operator==(const NoiseFamily&) const = default;
};

std::optional<NoiseFamily> parse_family(std::string_view name);

// All eight families of a layout, in tag-major order.
std::vector<NoiseFamily> all_families(Layout layout = Layout::kMixed);

// 1/2 (|q> G1 +- |~q> G2) with q = HHV, HHH, VHH, HVH for psi, psi0, psi1,
// psi2 and ~q its complement. For kMixed, G1 = d1d2D3 + D1D2d3 and
// G2 = d1D2d3 + D1d2D3; for kAligned both are D1D2D3 + d1d2d3.
PureState family_state(const NoiseFamily& family);

class OutsideModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Matches by fidelity >= 1 - 1e-9 against the eight family states of
// `layout`. Throws OutsideModelError when none match.
NoiseFamily classify_family(const PureState& state, Layout layout = Layout::kMixed);

// One optional Pauli per photon.
struct PauliCombination {
  std::array<std::optional<PauliKind>, 3> per_photon{};

  std::vector<PauliError> errors() const;
  // "I,X,Z" style.
  std::string label() const;
  bool operator==(const PauliCombination&) const = default;
};

// All 64 combinations in lexicographic order over (I, X, Y, Z) per photon.
std::vector<PauliCombination> all_pauli_combinations();

struct WeightedCombination {
  double weight = 0.0;
  PauliCombination combination;
};

// Independent per-photon depolarization: no error 1 - p, X/Y/Z p/3 each.
// Zero-weight combinations are omitted. Throws for p outside [0, 1].
std::vector<WeightedCombination> depolarizing_mixture(double p);

// "X@1,Z@3", "p=0.1" or "none".
struct NoiseSpec {
  std::vector<PauliError> errors;
  std::optional<double> depolarizing;

  bool empty() const { return errors.empty() && !depolarizing; }
  std::string to_string() const;
  bool operator==(const NoiseSpec&) const = default;
};

// Throws std::invalid_argument with a reason on malformed specs.
NoiseSpec parse_noise_spec(std::string_view text);

}  // namespace ghzsim
