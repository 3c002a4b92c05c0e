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

#include "ghzsim/noise.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace ghzsim {

namespace {

constexpr double kFamilyMatchTolerance = 1e-9;

void check_photon(int photon) {
  if (photon < 1 || photon > 3) {
    throw std::invalid_argument("photon index " + std::to_string(photon) +
                                " is outside 1..3");
  }
}

std::string_view base_pattern(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kPsi:
      return "HHV";
    case FamilyTag::kPsi0:
      return "HHH";
    case FamilyTag::kPsi1:
      return "VHH";
    case FamilyTag::kPsi2:
      return "HVH";
  }
  return "HHV";
}

std::string complement(std::string_view pols) {
  std::string out(pols);
  for (char& c : out) c = (c == 'H') ? 'V' : 'H';
  return out;
}

using ModeTriple = std::array<SpatialMode, 3>;

std::array<ModeTriple, 2> first_group(Layout layout) {
  if (layout == Layout::kMixed) {
    return {ModeTriple{"d1", "d2", "D3"}, ModeTriple{"D1", "D2", "d3"}};
  }
  return {ModeTriple{"D1", "D2", "D3"}, ModeTriple{"d1", "d2", "d3"}};
}

std::array<ModeTriple, 2> second_group(Layout layout) {
  if (layout == Layout::kMixed) {
    return {ModeTriple{"d1", "D2", "d3"}, ModeTriple{"D1", "d2", "D3"}};
  }
  return first_group(layout);
}

std::optional<double> parse_double(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

char to_char(PauliKind kind) {
  switch (kind) {
    case PauliKind::kX:
      return 'X';
    case PauliKind::kY:
      return 'Y';
    case PauliKind::kZ:
      return 'Z';
  }
  return '?';
}

std::vector<SpatialMode> channel_modes(int photon) {
  check_photon(photon);
  return {SpatialMode("d" + std::to_string(photon)),
          SpatialMode("D" + std::to_string(photon))};
}

PureState apply_pauli(const PureState& state, const PauliError& err) {
  return apply_pauli(state, err, channel_modes(err.photon));
}

PureState apply_pauli(const PureState& state, const PauliError& err,
                      std::span<const SpatialMode> modes) {
  check_photon(err.photon);
  const bool flip = err.kind != PauliKind::kZ;
  const bool phase = err.kind != PauliKind::kX;
  PureState::TermMap out;
  for (const auto& [ket, amp] : state.terms()) {
    std::vector<FockKet::Entry> entries;
    int v_count = 0;
    for (auto [rail, n] : ket.entries()) {
      if (std::find(modes.begin(), modes.end(), rail.mode) != modes.end()) {
        if (flip) rail.pol = flipped(rail.pol);
        if (rail.pol == Polarization::V) v_count += n;
      }
      entries.emplace_back(rail, n);
    }
    Complex sign = (phase && v_count % 2 == 1) ? -1.0 : 1.0;
    out[FockKet(std::move(entries))] += sign * amp;
  }
  return PureState(std::move(out));
}

PureState apply_paulis(const PureState& state, std::span<const PauliError> errors) {
  PureState out = state;
  for (const auto& e : errors) out = apply_pauli(out, e);
  return out;
}

std::string NoiseFamily::name() const {
  std::string out = layout == Layout::kMixed ? "psi" : "phi";
  switch (tag) {
    case FamilyTag::kPsi:
      break;
    case FamilyTag::kPsi0:
      out += "0";
      break;
    case FamilyTag::kPsi1:
      out += "1";
      break;
    case FamilyTag::kPsi2:
      out += "2";
      break;
  }
  out += sign == Sign::kPlus ? "+" : "-";
  return out;
}

std::optional<NoiseFamily> parse_family(std::string_view name) {
  for (Layout layout : {Layout::kMixed, Layout::kAligned}) {
    for (const auto& f : all_families(layout)) {
      if (f.name() == name) return f;
    }
  }
  return std::nullopt;
}

std::vector<NoiseFamily> all_families(Layout layout) {
  std::vector<NoiseFamily> out;
  for (FamilyTag tag : {FamilyTag::kPsi, FamilyTag::kPsi0, FamilyTag::kPsi1, FamilyTag::kPsi2}) {
    for (Sign sign : {Sign::kPlus, Sign::kMinus}) out.push_back({tag, sign, layout});
  }
  return out;
}

PureState family_state(const NoiseFamily& family) {
  const std::string q(base_pattern(family.tag));
  const std::string q_bar = complement(q);
  const double s = family.sign == Sign::kPlus ? 0.5 : -0.5;
  std::vector<std::pair<FockKet, Complex>> terms;
  for (const auto& modes : first_group(family.layout)) {
    terms.emplace_back(polarized(q, modes), 0.5);
  }
  for (const auto& modes : second_group(family.layout)) {
    terms.emplace_back(polarized(q_bar, modes), s);
  }
  return PureState(std::move(terms));
}

NoiseFamily classify_family(const PureState& state, Layout layout) {
  PureState normalized = state.normalized();
  for (const auto& f : all_families(layout)) {
    if (fidelity(normalized, family_state(f)) >= 1.0 - kFamilyMatchTolerance) return f;
  }
  throw OutsideModelError("state matches none of the eight " +
                          std::string(layout == Layout::kMixed ? "psi" : "phi") +
                          " noise families");
}

std::vector<PauliError> PauliCombination::errors() const {
  std::vector<PauliError> out;
  for (int i = 0; i < 3; ++i) {
    if (per_photon[i]) out.push_back({i + 1, *per_photon[i]});
  }
  return out;
}

std::string PauliCombination::label() const {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i) out += ",";
    out += per_photon[i] ? to_char(*per_photon[i]) : 'I';
  }
  return out;
}

std::vector<PauliCombination> all_pauli_combinations() {
  const std::array<std::optional<PauliKind>, 4> options{
      std::nullopt, PauliKind::kX, PauliKind::kY, PauliKind::kZ};
  std::vector<PauliCombination> out;
  for (const auto& a : options) {
    for (const auto& b : options) {
      for (const auto& c : options) out.push_back({{a, b, c}});
    }
  }
  return out;
}

std::vector<WeightedCombination> depolarizing_mixture(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
  }
  auto weight_of = [p](const std::optional<PauliKind>& k) { return k ? p / 3.0 : 1.0 - p; };
  std::vector<WeightedCombination> out;
  for (const auto& combo : all_pauli_combinations()) {
    double w = 1.0;
    for (const auto& k : combo.per_photon) w *= weight_of(k);
    if (w > 0.0) out.push_back({w, combo});
  }
  return out;
}

std::string NoiseSpec::to_string() const {
  if (depolarizing) return "p=" + format_double(*depolarizing);
  if (errors.empty()) return "none";
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += ",";
    out += to_char(e.kind);
    out += "@" + std::to_string(e.photon);
  }
  return out;
}

NoiseSpec parse_noise_spec(std::string_view text) {
  NoiseSpec spec;
  if (text.empty() || text == "none") return spec;
  if (text.starts_with("p=")) {
    auto p = parse_double(text.substr(2));
    if (!p || *p < 0.0 || *p > 1.0) {
      throw std::invalid_argument("depolarizing probability must be a number in [0, 1]");
    }
    spec.depolarizing = *p;
    return spec;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    std::string_view item =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (item.size() != 3 || item[1] != '@') {
      throw std::invalid_argument("noise item '" + std::string(item) +
                                  "' is not of the form K@n");
    }
    PauliError err;
    switch (item[0]) {
      case 'X':
        err.kind = PauliKind::kX;
        break;
      case 'Y':
        err.kind = PauliKind::kY;
        break;
      case 'Z':
        err.kind = PauliKind::kZ;
        break;
      default:
        throw std::invalid_argument("unknown Pauli kind in '" + std::string(item) + "'");
    }
    err.photon = item[2] - '0';
    check_photon(err.photon);
    spec.errors.push_back(err);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return spec;
}

}  // namespace ghzsim
