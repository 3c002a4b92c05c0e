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

#include "ghzsim/density.hpp"

#include <algorithm>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ghzsim {

namespace {

constexpr double kSchmidtCutoff = 1e-10;

SpatialMode position_mode(std::size_t i) {
  return SpatialMode("#" + std::to_string(i + 1));
}

std::pair<FockKet, FockKet> split_or_throw(const Bipartition& part, const FockKet& ket) {
  auto s = part.split(ket);
  if (!s) throw DecompositionError(ket);
  return *s;
}

template <class Key>
Eigen::Index index_in(const std::vector<Key>& keys, const Key& k) {
  return std::lower_bound(keys.begin(), keys.end(), k) - keys.begin();
}

}  // namespace

DensityOperator::DensityOperator(std::vector<FockKet> basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != static_cast<Eigen::Index>(basis_.size()) ||
      matrix_.cols() != matrix_.rows()) {
    throw std::invalid_argument("density matrix shape does not match its basis");
  }
}

DensityOperator DensityOperator::from_pure(const PureState& state) {
  std::vector<FockKet> basis;
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(state.size()));
  Eigen::Index i = 0;
  for (const auto& [ket, amp] : state.terms()) {
    basis.push_back(ket);
    psi(i++) = amp;
  }
  return DensityOperator(std::move(basis), psi * psi.adjoint());
}

std::optional<Eigen::Index> DensityOperator::index_of(const FockKet& ket) const {
  auto it = std::find(basis_.begin(), basis_.end(), ket);
  if (it == basis_.end()) return std::nullopt;
  return it - basis_.begin();
}

Complex DensityOperator::element(const FockKet& row, const FockKet& col) const {
  auto i = index_of(row);
  auto j = index_of(col);
  return (i && j) ? matrix_(*i, *j) : Complex{};
}

double DensityOperator::trace() const { return matrix_.trace().real(); }

double DensityOperator::purity() const {
  return (matrix_ * matrix_).trace().real();
}

double DensityOperator::hermiticity_defect() const {
  if (matrix_.size() == 0) return 0.0;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
  if (matrix_.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Bipartition polarization_spatial(std::vector<std::vector<SpatialMode>> positions) {
  Bipartition part;
  part.label = "polarization|spatial";
  part.split = [positions = std::move(positions)](const FockKet& ket)
      -> std::optional<std::pair<FockKet, FockKet>> {
    std::vector<FockKet::Entry> pol_entries;
    std::vector<FockKet::Entry> spatial_entries;
    int placed = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      std::optional<Rail> hit;
      for (const auto& [rail, n] : ket.entries()) {
        if (std::find(positions[i].begin(), positions[i].end(), rail.mode) ==
            positions[i].end()) {
          continue;
        }
        if (hit || n != 1) return std::nullopt;
        hit = rail;
      }
      if (!hit) return std::nullopt;
      pol_entries.emplace_back(Rail{position_mode(i), hit->pol}, 1);
      spatial_entries.emplace_back(Rail{hit->mode, Polarization::H}, 1);
      ++placed;
    }
    if (placed != ket.total_photons()) return std::nullopt;
    return std::make_pair(FockKet(std::move(pol_entries)),
                          FockKet(std::move(spatial_entries)));
  };
  return part;
}

Bipartition mode_cut(std::vector<SpatialMode> left, std::vector<SpatialMode> right) {
  Bipartition part;
  part.label = "modes";
  part.split = [left = std::move(left), right = std::move(right)](const FockKet& ket)
      -> std::optional<std::pair<FockKet, FockKet>> {
    FockKet l = ket.restricted_to(left);
    FockKet r = ket.restricted_to(right);
    if (l.total_photons() + r.total_photons() != ket.total_photons()) {
      return std::nullopt;
    }
    return std::make_pair(std::move(l), std::move(r));
  };
  return part;
}

DensityOperator partial_trace(const DensityOperator& rho, const Bipartition& part,
                              Factor keep) {
  const auto& basis = rho.basis();
  std::vector<std::pair<FockKet, FockKet>> splits;
  splits.reserve(basis.size());
  std::optional<int> photons;
  for (const FockKet& ket : basis) {
    if (photons && *photons != ket.total_photons()) {
      throw std::invalid_argument("partial trace needs a fixed photon-number sector");
    }
    photons = ket.total_photons();
    splits.push_back(split_or_throw(part, ket));
  }
  auto kept_of = [&](std::size_t i) -> const FockKet& {
    return keep == Factor::Left ? splits[i].first : splits[i].second;
  };
  auto traced_of = [&](std::size_t i) -> const FockKet& {
    return keep == Factor::Left ? splits[i].second : splits[i].first;
  };

  std::vector<FockKet> kept;
  for (std::size_t i = 0; i < basis.size(); ++i) kept.push_back(kept_of(i));
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(kept.size()));
  const Eigen::MatrixXcd& m = rho.matrix();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (traced_of(i) != traced_of(j)) continue;
      reduced(index_in(kept, kept_of(i)), index_in(kept, kept_of(j))) +=
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityOperator(std::move(kept), std::move(reduced));
}

namespace {

struct CoefficientMatrix {
  std::vector<FockKet> left;
  std::vector<FockKet> right;
  Eigen::MatrixXcd values;
};

CoefficientMatrix coefficient_matrix(const PureState& state, const Bipartition& part) {
  std::vector<std::pair<std::pair<FockKet, FockKet>, Complex>> entries;
  CoefficientMatrix c;
  for (const auto& [ket, amp] : state.terms()) {
    auto s = split_or_throw(part, ket);
    c.left.push_back(s.first);
    c.right.push_back(s.second);
    entries.emplace_back(std::move(s), amp);
  }
  for (auto* keys : {&c.left, &c.right}) {
    std::sort(keys->begin(), keys->end());
    keys->erase(std::unique(keys->begin(), keys->end()), keys->end());
  }
  c.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(c.left.size()),
                                    static_cast<Eigen::Index>(c.right.size()));
  for (const auto& [s, amp] : entries) {
    c.values(index_in(c.left, s.first), index_in(c.right, s.second)) += amp;
  }
  return c;
}

}  // namespace

SchmidtDecomposition schmidt(const PureState& state, const Bipartition& part) {
  CoefficientMatrix c = coefficient_matrix(state, part);
  SchmidtDecomposition out;
  if (c.values.size() == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c.values);
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    double s = svd.singularValues()(i);
    if (s > kSchmidtCutoff) out.coefficients.push_back(s);
  }
  out.rank = static_cast<int>(out.coefficients.size());
  return out;
}

double factorization_defect(const PureState& state, const Bipartition& part) {
  CoefficientMatrix c = coefficient_matrix(state, part);
  const Eigen::MatrixXcd& psi = c.values;
  // rho_L = psi psi^dagger, rho_R = (psi^dagger psi)^T in these coordinates.
  Eigen::MatrixXcd rho_left = psi * psi.adjoint();
  Eigen::MatrixXcd rho_right = (psi.adjoint() * psi).transpose();
  double worst = 0.0;
  const Eigen::Index nl = psi.rows();
  const Eigen::Index nr = psi.cols();
  for (Eigen::Index l = 0; l < nl; ++l) {
    for (Eigen::Index r = 0; r < nr; ++r) {
      for (Eigen::Index l2 = 0; l2 < nl; ++l2) {
        for (Eigen::Index r2 = 0; r2 < nr; ++r2) {
          Complex full = psi(l, r) * std::conj(psi(l2, r2));
          Complex product = rho_left(l, l2) * rho_right(r, r2);
          worst = std::max(worst, std::abs(full - product));
        }
      }
    }
  }
  return worst;
}

}  // namespace ghzsim
