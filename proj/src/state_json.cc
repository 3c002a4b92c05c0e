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

#include "ghzsim/state_json.hpp"

namespace ghzsim {

nlohmann::json to_json(const FockKet& ket) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [rail, n] : ket.entries()) {
    out.push_back({rail.mode.id(), std::string(1, to_char(rail.pol)), n});
  }
  return out;
}

nlohmann::json to_json(const PureState& state) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [ket, amp] : state.terms()) {
    out.push_back({{"ket", to_json(ket)}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return out;
}

FockKet ket_from_json(const nlohmann::json& j) {
  std::vector<FockKet::Entry> entries;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) {
      throw std::invalid_argument("ket entry must be [mode, pol, count]");
    }
    auto pol = parse_polarization(e.at(1).get<std::string>());
    if (!pol) throw std::invalid_argument("polarization must be \"H\" or \"V\"");
    entries.emplace_back(Rail{SpatialMode(e.at(0).get<std::string>()), *pol},
                         e.at(2).get<int>());
  }
  return FockKet(std::move(entries));
}

PureState state_from_json(const nlohmann::json& j) {
  std::vector<std::pair<FockKet, Complex>> terms;
  for (const auto& t : j) {
    terms.emplace_back(ket_from_json(t.at("ket")),
                       Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  }
  return PureState(std::move(terms));
}

}  // namespace ghzsim
