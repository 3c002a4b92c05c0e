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

#include "ghzsim/network.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace ghzsim {

const DetectorGroup* CircuitNetwork::detector(std::string_view name) const {
  for (const auto& d : detectors) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::vector<NetworkElement> CircuitNetwork::elements() const {
  std::vector<NetworkElement> out;
  for (const auto& step : steps) {
    if (const auto* e = std::get_if<NetworkElement>(&step)) out.push_back(*e);
  }
  return out;
}

bool CircuitNetwork::has_channels() const {
  return std::any_of(steps.begin(), steps.end(), [](const NetworkStep& s) {
    return std::holds_alternative<ChannelMarker>(s);
  });
}

Propagation propagate(const CircuitNetwork& network, const PureState& input,
                      std::span<const PauliError> errors) {
  for (const auto& err : errors) {
    bool found = std::any_of(network.steps.begin(), network.steps.end(), [&](const NetworkStep& s) {
      const auto* m = std::get_if<ChannelMarker>(&s);
      return m && m->photon == err.photon;
    });
    if (!found) {
      throw std::invalid_argument("network has no channel for photon " +
                                  std::to_string(err.photon));
    }
  }
  Propagation out{input, std::nullopt};
  for (const auto& step : network.steps) {
    if (const auto* e = std::get_if<NetworkElement>(&step)) {
      out.output = apply_element(out.output, *e);
      continue;
    }
    const auto& marker = std::get<ChannelMarker>(step);
    for (const auto& err : errors) {
      if (err.photon == marker.photon) out.output = apply_pauli(out.output, err, marker.modes);
    }
    out.at_channel = out.output;
  }
  return out;
}

CoincidenceLayout coincidence_layout(const CircuitNetwork& network) {
  CoincidenceLayout layout;
  std::map<int, std::vector<std::string>> slots;
  for (const auto& d : network.detectors) {
    if (d.name == "T") {
      layout.trigger = d.name;
      continue;
    }
    if (d.name.empty() || !std::isdigit(static_cast<unsigned char>(d.name.back()))) {
      throw std::invalid_argument("detector group '" + d.name + "' has no slot digit");
    }
    slots[d.name.back() - '0'].push_back(d.name);
  }
  if (layout.trigger.empty()) throw std::invalid_argument("network has no trigger group T");
  for (auto& [slot, names] : slots) layout.slots.push_back(std::move(names));
  return layout;
}

std::string CoincidencePattern::label() const {
  std::string out;
  for (const auto& g : photon_groups) out += g;
  return out;
}

std::string CoincidencePattern::to_string() const {
  std::string out = "{" + trigger;
  for (const auto& g : photon_groups) out += ", " + g;
  return out + "}";
}

std::vector<CoincidencePattern> enumerate_patterns(const CoincidenceLayout& layout) {
  std::vector<CoincidencePattern> out{{layout.trigger, {}}};
  for (const auto& slot : layout.slots) {
    std::vector<CoincidencePattern> next;
    for (const auto& partial : out) {
      for (const auto& g : slot) {
        CoincidencePattern p = partial;
        p.photon_groups.push_back(g);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace ghzsim
