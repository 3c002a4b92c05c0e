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

#include "ghzsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ghzsim {

namespace {

double sqrt_factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return std::sqrt(f);
}

bool contains(std::span<const SpatialMode> modes, const SpatialMode& mode) {
  return std::find(modes.begin(), modes.end(), mode) != modes.end();
}

std::string format_complex(Complex c) {
  std::ostringstream out;
  out.precision(6);
  if (c.imag() == 0.0) {
    out << c.real();
  } else {
    out << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag())
        << "i)";
  }
  return out.str();
}

}  // namespace

char to_char(Polarization pol) { return pol == Polarization::H ? 'H' : 'V'; }

Polarization flipped(Polarization pol) {
  return pol == Polarization::H ? Polarization::V : Polarization::H;
}

std::optional<Polarization> parse_polarization(std::string_view text) {
  if (text == "H") return Polarization::H;
  if (text == "V") return Polarization::V;
  return std::nullopt;
}

std::string Rail::to_string() const {
  return mode.id() + ":" + to_char(pol);
}

FockKet::FockKet(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& [rail, n] : entries) {
    if (n < 0) throw std::invalid_argument("negative occupation on " + rail.to_string());
    if (!entries_.empty() && entries_.back().first == rail) {
      entries_.back().second += n;
    } else {
      entries_.emplace_back(std::move(rail), n);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
}

FockKet FockKet::of(std::initializer_list<Rail> rails) {
  return of(std::span<const Rail>(rails.begin(), rails.size()));
}

FockKet FockKet::of(std::span<const Rail> rails) {
  std::vector<Entry> entries;
  entries.reserve(rails.size());
  for (const Rail& r : rails) entries.emplace_back(r, 1);
  return FockKet(std::move(entries));
}

int FockKet::total_photons() const {
  int total = 0;
  for (const auto& e : entries_) total += e.second;
  return total;
}

int FockKet::count(const Rail& rail) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), rail,
      [](const Entry& e, const Rail& r) { return e.first < r; });
  return (it != entries_.end() && it->first == rail) ? it->second : 0;
}

int FockKet::count(const SpatialMode& mode) const {
  return count(Rail{mode, Polarization::H}) + count(Rail{mode, Polarization::V});
}

FockKet FockKet::with_photon(const Rail& rail) const {
  std::vector<Entry> entries = entries_;
  entries.emplace_back(rail, 1);
  return FockKet(std::move(entries));
}

FockKet FockKet::restricted_to(std::span<const SpatialMode> modes) const {
  FockKet out;
  for (const auto& e : entries_) {
    if (contains(modes, e.first.mode)) out.entries_.push_back(e);
  }
  return out;
}

FockKet FockKet::without(std::span<const SpatialMode> modes) const {
  FockKet out;
  for (const auto& e : entries_) {
    if (!contains(modes, e.first.mode)) out.entries_.push_back(e);
  }
  return out;
}

FockKet FockKet::merged(const FockKet& other) const {
  std::vector<Entry> entries = entries_;
  entries.insert(entries.end(), other.entries_.begin(), other.entries_.end());
  return FockKet(std::move(entries));
}

std::string FockKet::to_string() const {
  if (entries_.empty()) return "|vac>";
  std::string out;
  for (const auto& [rail, n] : entries_) {
    out += "|";
    if (n != 1) out += std::to_string(n);
    out += to_char(rail.pol);
    out += ">_";
    out += rail.mode.id();
  }
  return out;
}

FockKet polarized(std::string_view pols, std::initializer_list<SpatialMode> modes) {
  return polarized(pols, std::span<const SpatialMode>(modes.begin(), modes.size()));
}

FockKet polarized(std::string_view pols, std::span<const SpatialMode> modes) {
  if (pols.size() != modes.size()) {
    throw std::invalid_argument("polarization pattern and mode list differ in length");
  }
  std::vector<FockKet::Entry> entries;
  for (std::size_t i = 0; i < pols.size(); ++i) {
    auto pol = parse_polarization(pols.substr(i, 1));
    if (!pol) throw std::invalid_argument("polarization letters must be H or V");
    entries.emplace_back(Rail{modes[i], *pol}, 1);
  }
  return FockKet(std::move(entries));
}

PureState::PureState(std::vector<std::pair<FockKet, Complex>> terms) {
  for (auto& [ket, amp] : terms) terms_[ket] += amp;
  prune();
}

PureState::PureState(TermMap terms) : terms_(std::move(terms)) { prune(); }

PureState PureState::basis(const FockKet& ket, Complex amplitude) {
  return PureState(TermMap{{ket, amplitude}});
}

void PureState::prune() {
  std::erase_if(terms_, [](const auto& t) {
    return std::abs(t.second) <= kAmplitudeTolerance;
  });
}

Complex PureState::amplitude(const FockKet& ket) const {
  auto it = terms_.find(ket);
  return it == terms_.end() ? Complex{} : it->second;
}

double PureState::norm_squared() const {
  double total = 0.0;
  for (const auto& t : terms_) total += std::norm(t.second);
  return total;
}

double PureState::norm() const { return std::sqrt(norm_squared()); }

bool PureState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

PureState PureState::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero state");
  return scaled(1.0 / n);
}

PureState PureState::scaled(Complex factor) const {
  TermMap out = terms_;
  for (auto& t : out) t.second *= factor;
  return PureState(std::move(out));
}

PureState PureState::operator+(const PureState& other) const {
  TermMap out = terms_;
  for (const auto& [ket, amp] : other.terms_) out[ket] += amp;
  return PureState(std::move(out));
}

PureState PureState::operator-(const PureState& other) const {
  return *this + other.scaled(-1.0);
}

PureState operator*(Complex factor, const PureState& state) {
  return state.scaled(factor);
}

Complex inner_product(const PureState& bra, const PureState& ket) {
  Complex total{};
  const auto& small = bra.size() <= ket.size() ? bra.terms() : ket.terms();
  const auto& large = bra.size() <= ket.size() ? ket.terms() : bra.terms();
  for (const auto& [k, amp] : small) {
    auto it = large.find(k);
    if (it == large.end()) continue;
    total += (&small == &bra.terms()) ? std::conj(amp) * it->second
                                      : std::conj(it->second) * amp;
  }
  return total;
}

double fidelity(const PureState& state, const PureState& target) {
  return std::clamp(std::norm(inner_product(target, state)), 0.0, 1.0);
}

PureState bosonic_product(const PureState& first, const PureState& second) {
  PureState::TermMap out;
  for (const auto& [k1, a1] : first.terms()) {
    for (const auto& [k2, a2] : second.terms()) {
      FockKet joint = k1.merged(k2);
      double weight = 1.0;
      for (const auto& [rail, n] : joint.entries()) {
        int n1 = k1.count(rail);
        int n2 = k2.count(rail);
        weight *= sqrt_factorial(n) / (sqrt_factorial(n1) * sqrt_factorial(n2));
      }
      out[joint] += a1 * a2 * weight;
    }
  }
  return PureState(std::move(out));
}

ModeTransform::ModeTransform(std::vector<Rail> inputs, std::vector<Rail> outputs,
                             Eigen::MatrixXcd matrix)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      matrix_(std::move(matrix)) {
  if (matrix_.rows() != static_cast<Eigen::Index>(outputs_.size()) ||
      matrix_.cols() != static_cast<Eigen::Index>(inputs_.size())) {
    throw std::invalid_argument("mode transform matrix must be outputs x inputs");
  }
  auto distinct = [](std::vector<Rail> rails) {
    std::sort(rails.begin(), rails.end());
    return std::adjacent_find(rails.begin(), rails.end()) == rails.end();
  };
  if (!distinct(inputs_) || !distinct(outputs_)) {
    throw std::invalid_argument("mode transform lists a rail twice");
  }
}

double ModeTransform::unitarity_defect() const {
  Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  gram -= Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  return gram.size() == 0 ? 0.0 : gram.cwiseAbs().maxCoeff();
}

ModeTransform ModeTransform::then(const ModeTransform& next) const {
  if (next.inputs_.size() != outputs_.size()) {
    throw std::invalid_argument("composed transforms do not share a rail set");
  }
  // Reorder `next` so its columns line up with our output rows.
  Eigen::MatrixXcd aligned(next.matrix_.rows(), next.matrix_.cols());
  for (std::size_t j = 0; j < outputs_.size(); ++j) {
    auto it = std::find(next.inputs_.begin(), next.inputs_.end(), outputs_[j]);
    if (it == next.inputs_.end()) {
      throw std::invalid_argument("composed transforms do not share a rail set");
    }
    aligned.col(j) = next.matrix_.col(it - next.inputs_.begin());
  }
  return ModeTransform(inputs_, next.outputs_, aligned * matrix_);
}

PureState apply_mode_transform(const PureState& state,
                               const ModeTransform& transform) {
  double defect = transform.unitarity_defect();
  if (defect > kUnitarityTolerance) {
    throw NonUnitaryError("mode transform is not unitary (defect " +
                              std::to_string(defect) + ")",
                          defect);
  }
  const auto& inputs = transform.inputs();
  const auto& outputs = transform.outputs();
  const Eigen::MatrixXcd& u = transform.matrix();

  std::vector<Rail> fresh_outputs;
  for (const Rail& r : outputs) {
    if (std::find(inputs.begin(), inputs.end(), r) == inputs.end()) {
      fresh_outputs.push_back(r);
    }
  }

  // Nonzero column entries, per input rail.
  std::vector<std::vector<std::pair<std::size_t, Complex>>> images(inputs.size());
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      if (std::abs(u(k, j)) > 0.0) images[j].emplace_back(k, u(k, j));
    }
  }

  PureState::TermMap out;
  for (const auto& [ket, amp] : state.terms()) {
    std::vector<FockKet::Entry> spectators;
    // Monomials in output creation operators, keyed by occupation.
    std::map<std::vector<int>, Complex> monomials{
        {std::vector<int>(outputs.size(), 0), amp}};
    for (const auto& [rail, n] : ket.entries()) {
      auto it = std::find(inputs.begin(), inputs.end(), rail);
      if (it == inputs.end()) {
        if (std::find(fresh_outputs.begin(), fresh_outputs.end(), rail) !=
            fresh_outputs.end()) {
          throw std::invalid_argument("output rail " + rail.to_string() +
                                      " is already occupied");
        }
        spectators.emplace_back(rail, n);
        continue;
      }
      const auto& image = images[it - inputs.begin()];
      for (auto& m : monomials) m.second /= sqrt_factorial(n);
      for (int p = 0; p < n; ++p) {
        std::map<std::vector<int>, Complex> next;
        for (const auto& [occ, c] : monomials) {
          for (const auto& [k, coeff] : image) {
            std::vector<int> grown = occ;
            ++grown[k];
            next[grown] += c * coeff;
          }
        }
        monomials = std::move(next);
      }
    }
    for (const auto& [occ, c] : monomials) {
      std::vector<FockKet::Entry> entries = spectators;
      double weight = 1.0;
      for (std::size_t k = 0; k < occ.size(); ++k) {
        if (occ[k] == 0) continue;
        entries.emplace_back(outputs[k], occ[k]);
        weight *= sqrt_factorial(occ[k]);
      }
      out[FockKet(std::move(entries))] += c * weight;
    }
  }
  return PureState(std::move(out));
}

Projection project_occupancy(const PureState& state,
                             std::span<const OccupancyGroup> groups) {
  std::set<SpatialMode> seen;
  for (const auto& g : groups) {
    for (const auto& m : g.modes) {
      if (!seen.insert(m).second) {
        throw std::invalid_argument("occupancy groups overlap on mode " + m.id());
      }
    }
  }
  PureState::TermMap kept;
  for (const auto& [ket, amp] : state.terms()) {
    bool match = std::all_of(groups.begin(), groups.end(), [&](const auto& g) {
      int n = 0;
      for (const auto& m : g.modes) n += ket.count(m);
      return n == g.count;
    });
    if (match) kept.emplace(ket, amp);
  }
  PureState part(std::move(kept));
  double p = part.norm_squared();
  if (part.empty()) return Projection{PureState{}, 0.0};
  return Projection{part.normalized(), p};
}

PureState factor_out(const PureState& state, std::span<const SpatialMode> modes) {
  std::optional<FockKet> common;
  PureState::TermMap out;
  for (const auto& [ket, amp] : state.terms()) {
    FockKet part = ket.restricted_to(modes);
    if (common && *common != part) {
      throw std::invalid_argument("state is not a product on the traced modes: " +
                                  common->to_string() + " vs " + part.to_string());
    }
    common = part;
    out[ket.without(modes)] += amp;
  }
  return PureState(std::move(out));
}

std::string to_string(const PureState& state) {
  if (state.empty()) return "0";
  std::string out;
  for (const auto& [ket, amp] : state.terms()) {
    if (!out.empty()) out += " + ";
    out += format_complex(amp) + " " + ket.to_string();
  }
  return out;
}

}  // namespace ghzsim
