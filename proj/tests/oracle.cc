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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ghzsim::testing {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Rail indices with repetition, one entry per photon.
std::vector<int> expand(const FockKet& ket, const DenseOracle& oracle) {
  std::vector<int> out;
  for (const auto& [rail, n] : ket.entries()) {
    for (int k = 0; k < n; ++k) out.push_back(oracle.index(rail));
  }
  return out;
}

double norm_factor(const FockKet& ket) {
  double f = 1.0;
  for (const auto& [rail, n] : ket.entries()) f *= factorial(n);
  return f;
}

void basis_rec(const std::vector<Rail>& rails, std::size_t pos, int left,
               std::vector<FockKet::Entry>& acc, std::vector<FockKet>& out) {
  if (pos == rails.size()) {
    if (left == 0) out.emplace_back(acc);
    return;
  }
  for (int n = 0; n <= left; ++n) {
    if (n > 0) acc.emplace_back(rails[pos], n);
    basis_rec(rails, pos + 1, left - n, acc, out);
    if (n > 0) acc.pop_back();
  }
}

}  // namespace

Complex permanent(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  if (n != m.cols()) throw std::invalid_argument("permanent of a non-square matrix");
  if (n == 0) return 1.0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

DenseOracle::DenseOracle(const std::vector<NetworkElement>& elements) {
  std::set<Rail> all;
  for (const auto& e : elements) {
    for (const auto& r : e.transform().inputs()) all.insert(r);
    for (const auto& r : e.transform().outputs()) all.insert(r);
  }
  rails_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < rails_.size(); ++i) index_[rails_[i]] = static_cast<int>(i);
  const Eigen::Index n = static_cast<Eigen::Index>(rails_.size());
  transfer_ = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& e : elements) {
    const ModeTransform& t = e.transform();
    // Embed: input columns are replaced by the element's images; every
    // other rail passes through.
    Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& r : t.inputs()) step(index(r), index(r)) = 0.0;
    for (std::size_t j = 0; j < t.inputs().size(); ++j) {
      for (std::size_t k = 0; k < t.outputs().size(); ++k) {
        step(index(t.outputs()[k]), index(t.inputs()[j])) +=
            t.matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      }
    }
    transfer_ = step * transfer_;
  }
}

int DenseOracle::index(const Rail& rail) const {
  auto it = index_.find(rail);
  if (it == index_.end()) throw std::out_of_range("rail " + rail.to_string() + " not in network");
  return it->second;
}

Complex DenseOracle::amplitude(const FockKet& out, const FockKet& in) const {
  if (out.total_photons() != in.total_photons()) return 0.0;
  const std::vector<int> rows = expand(out, *this);
  const std::vector<int> cols = expand(in, *this);
  Eigen::MatrixXcd sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = transfer_(rows[i], cols[j]);
  }
  return permanent(sub) / std::sqrt(norm_factor(out) * norm_factor(in));
}

std::vector<FockKet> DenseOracle::fock_basis(const std::vector<Rail>& rails, int photons) {
  std::vector<FockKet> out;
  std::vector<FockKet::Entry> acc;
  basis_rec(rails, 0, photons, acc, out);
  return out;
}

std::map<FockKet, Complex> DenseOracle::evolve_onto(const PureState& input,
                                                    const std::vector<Rail>& rails) const {
  std::map<FockKet, Complex> out;
  if (input.empty()) return out;
  const int n = input.terms().begin()->first.total_photons();
  for (const FockKet& ket : fock_basis(rails, n)) {
    Complex a = 0.0;
    for (const auto& [in, amp] : input.terms()) a += amp * amplitude(ket, in);
    out[ket] = a;
  }
  return out;
}

std::vector<Rail> DenseOracle::reachable_rails() const {
  std::vector<Rail> out;
  for (std::size_t i = 0; i < rails_.size(); ++i) {
    if (transfer_.row(static_cast<Eigen::Index>(i)).cwiseAbs().maxCoeff() > 0.0) {
      out.push_back(rails_[i]);
    }
  }
  return out;
}

}  // namespace ghzsim::testing
