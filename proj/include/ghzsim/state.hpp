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

// Few-photon bosonic states over (spatial mode, polarization) rails.
//
// A PureState is a sparse map from canonical Fock kets to complex
// amplitudes. Linear optics acts by rewriting each creation operator of an
// input rail as a linear combination of output-rail creation operators and
// re-expanding the product, so multi-occupied rails carry the usual sqrt(n!)
// weights.

#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ghzsim {

using Complex = std::complex<double>;

// Amplitudes at or below this magnitude are dropped.
inline constexpr double kAmplitudeTolerance = 1e-12;
// Mode transforms with max|U^dagger U - I| above this are rejected.
inline constexpr double kUnitarityTolerance = 1e-9;

enum class Polarization : std::uint8_t { H = 0, V = 1 };

char to_char(Polarization pol);
Polarization flipped(Polarization pol);
std::optional<Polarization> parse_polarization(std::string_view text);

class SpatialMode {
 public:
  SpatialMode() = default;
  explicit SpatialMode(std::string id) : id_(std::move(id)) {}
  SpatialMode(const char* id) : id_(id) {}  // NOLINT: literal mode names

  const std::string& id() const { return id_; }

  auto operator<=>(const SpatialMode&) const = default;
  bool operator==(const SpatialMode&) const = default;

 private:
  std::string id_;
};

struct Rail {
  SpatialMode mode;
  Polarization pol = Polarization::H;

  auto operator<=>(const Rail&) const = default;
  bool operator==(const Rail&) const = default;

  std::string to_string() const;
};

// Occupation-number basis ket. Entries are kept sorted by rail with no
// zero counts, so structurally equal kets compare equal regardless of how
// they were built.
class FockKet {
 public:
  using Entry = std::pair<Rail, int>;

  FockKet() = default;
  // Duplicate rails are summed; negative counts throw.
  explicit FockKet(std::vector<Entry> entries);
  // One photon per listed rail (repeats accumulate).
  static FockKet of(std::initializer_list<Rail> rails);
  static FockKet of(std::span<const Rail> rails);

  const std::vector<Entry>& entries() const { return entries_; }
  int total_photons() const;
  int count(const Rail& rail) const;
  int count(const SpatialMode& mode) const;
  bool empty() const { return entries_.empty(); }

  FockKet with_photon(const Rail& rail) const;
  // Sub-ket restricted to rails whose mode is (or is not) in `modes`.
  FockKet restricted_to(std::span<const SpatialMode> modes) const;
  FockKet without(std::span<const SpatialMode> modes) const;
  // Photons of both kets combined (occupations add).
  FockKet merged(const FockKet& other) const;

  std::string to_string() const;

  auto operator<=>(const FockKet&) const = default;
  bool operator==(const FockKet&) const = default;

 private:
  std::vector<Entry> entries_;
};

// Kets such as |HHV>_{D1 D2 D3}: one photon per mode with the given
// polarization letters.
FockKet polarized(std::string_view pols, std::initializer_list<SpatialMode> modes);
FockKet polarized(std::string_view pols, std::span<const SpatialMode> modes);

class PureState {
 public:
  using TermMap = std::map<FockKet, Complex>;

  PureState() = default;
  // Duplicate kets are summed; amplitudes within kAmplitudeTolerance of zero
  // are pruned.
  explicit PureState(std::vector<std::pair<FockKet, Complex>> terms);
  explicit PureState(TermMap terms);
  PureState(std::initializer_list<std::pair<FockKet, Complex>> terms)
      : PureState(std::vector<std::pair<FockKet, Complex>>(terms)) {}
  static PureState basis(const FockKet& ket, Complex amplitude = 1.0);
  static PureState vacuum() { return basis(FockKet{}); }

  const TermMap& terms() const { return terms_; }
  Complex amplitude(const FockKet& ket) const;
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = 1e-12) const;

  // Throws std::domain_error on the zero vector.
  PureState normalized() const;
  PureState scaled(Complex factor) const;
  PureState operator+(const PureState& other) const;
  PureState operator-(const PureState& other) const;

 private:
  void prune();

  TermMap terms_;
};

PureState operator*(Complex factor, const PureState& state);

Complex inner_product(const PureState& bra, const PureState& ket);

// |<target|state>|^2 clamped to [0, 1].
double fidelity(const PureState& state, const PureState& target);

// Applies the creation-operator polynomials of two states one after the
// other: (sum_k a_k prod (c^dag)^n / sqrt(n!)) acting on the other state.
// This is how two independently emitted pairs that may share rails combine.
PureState bosonic_product(const PureState& first, const PureState& second);

class NonUnitaryError : public std::invalid_argument {
 public:
  NonUnitaryError(const std::string& what, double defect)
      : std::invalid_argument(what), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

// Linear map taking the creation operator of inputs[j] to
// sum_k matrix(k, j) * creation operator of outputs[k]. Rails that are not
// inputs are left alone. Output rails that are not also inputs must be empty
// in any state the transform is applied to.
class ModeTransform {
 public:
  ModeTransform() = default;
  ModeTransform(std::vector<Rail> inputs, std::vector<Rail> outputs,
                Eigen::MatrixXcd matrix);

  const std::vector<Rail>& inputs() const { return inputs_; }
  const std::vector<Rail>& outputs() const { return outputs_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  // max_ij |(U^dagger U - I)_ij|; zero for unitaries and isometries.
  double unitarity_defect() const;

  // The transform equivalent to applying *this and then `next`. The input
  // rails of `next` must be exactly the output rails of *this.
  ModeTransform then(const ModeTransform& next) const;

 private:
  std::vector<Rail> inputs_;
  std::vector<Rail> outputs_;
  Eigen::MatrixXcd matrix_;
};

// Throws NonUnitaryError if transform.unitarity_defect() exceeds
// kUnitarityTolerance, std::invalid_argument if an output-only rail is
// already occupied.
PureState apply_mode_transform(const PureState& state,
                               const ModeTransform& transform);

struct OccupancyGroup {
  std::vector<SpatialMode> modes;
  int count = 1;
};

struct Projection {
  PureState state;  // renormalized; empty when probability is zero
  double probability = 0.0;
  bool empty() const { return state.empty(); }
};

// Keeps the kets whose photon count summed over each group's modes equals
// the group's required count. Throws std::invalid_argument on overlapping
// groups.
Projection project_occupancy(const PureState& state,
                             std::span<const OccupancyGroup> groups);

// Removes the rails of `modes` from every ket. All kets must carry the same
// occupation on those modes, i.e. the state is a product with a fixed ket
// there; otherwise std::invalid_argument.
PureState factor_out(const PureState& state,
                     std::span<const SpatialMode> modes);

std::string to_string(const PureState& state);

}  // namespace ghzsim
