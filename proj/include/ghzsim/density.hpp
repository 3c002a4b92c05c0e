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

// Density operators, bipartitions and entanglement diagnostics.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghzsim/state.hpp"

namespace ghzsim {

class DensityOperator {
 public:
  DensityOperator(std::vector<FockKet> basis, Eigen::MatrixXcd matrix);
  static DensityOperator from_pure(const PureState& state);

  const std::vector<FockKet>& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  // Zero for kets outside the basis.
  Complex element(const FockKet& row, const FockKet& col) const;

  double trace() const;
  double purity() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;

 private:
  std::optional<Eigen::Index> index_of(const FockKet& ket) const;

  std::vector<FockKet> basis_;
  Eigen::MatrixXcd matrix_;
};

// Splits each ket of a fixed-photon-number sector into a pair of factor
// kets. For the polarization/spatial cut the left factor lists one
// polarized photon per logical position (on placeholder modes "#1", "#2",
// ...) and the right factor lists the occupied spatial modes with the
// polarization erased (all H).
struct Bipartition {
  using Split = std::function<std::optional<std::pair<FockKet, FockKet>>(const FockKet&)>;
  std::string label;
  Split split;
};

enum class Factor { Left, Right };
inline constexpr Factor kPolarization = Factor::Left;
inline constexpr Factor kSpatial = Factor::Right;

// `positions[i]` holds the spatial modes photon i may occupy; every ket must
// have exactly one photon in each position and none elsewhere.
Bipartition polarization_spatial(std::vector<std::vector<SpatialMode>> positions);

// Photons in `left` modes versus photons in `right` modes.
Bipartition mode_cut(std::vector<SpatialMode> left, std::vector<SpatialMode> right);

class DecompositionError : public std::invalid_argument {
 public:
  explicit DecompositionError(const FockKet& ket)
      : std::invalid_argument("ket " + ket.to_string() +
                              " does not decompose under the bipartition"),
        ket_(ket) {}
  const FockKet& ket() const { return ket_; }

 private:
  FockKet ket_;
};

DensityOperator partial_trace(const DensityOperator& rho, const Bipartition& part,
                              Factor keep);

struct SchmidtDecomposition {
  int rank = 0;
  std::vector<double> coefficients;  // descending, pruned at 1e-10
};

SchmidtDecomposition schmidt(const PureState& state, const Bipartition& part);

// max entrywise |rho - rho_left (x) rho_right| for a pure state, over the
// full product of the two factor bases.
double factorization_defect(const PureState& state, const Bipartition& part);

}  // namespace ghzsim
