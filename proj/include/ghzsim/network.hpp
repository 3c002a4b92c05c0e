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

// A circuit network: QND couplings on the source modes, an ordered list of
// elements and channel markers, and detector groups.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghzsim/elements.hpp"
#include "ghzsim/noise.hpp"
#include "ghzsim/qnd.hpp"
#include "ghzsim/source.hpp"
#include "ghzsim/state.hpp"

namespace ghzsim {

// Point where photon `photon` crosses the noisy channel, occupying one of
// `modes`. Identity unless noise is applied.
struct ChannelMarker {
  int photon = 1;
  std::vector<SpatialMode> modes;

  bool operator==(const ChannelMarker&) const = default;
};

using NetworkStep = std::variant<NetworkElement, ChannelMarker>;

struct DetectorGroup {
  std::string name;
  std::vector<SpatialMode> modes;

  bool operator==(const DetectorGroup&) const = default;
};

struct ProtocolParams {
  double theta = kDefaultTheta;
  double alpha = kDefaultAlpha;
  // Homodyne readout used to derive the feed-forward phase.
  double homodyne_x = 0.0;
};

struct CircuitNetwork {
  std::vector<NetworkStep> steps;
  std::vector<KerrCoupling> couplings;
  std::vector<DetectorGroup> detectors;
  std::optional<CaseWeights> source;
  ProtocolParams params;
  std::optional<NoiseSpec> noise;

  const DetectorGroup* detector(std::string_view name) const;
  std::vector<NetworkElement> elements() const;
  bool has_channels() const;
};

struct Propagation {
  PureState output;
  // State right after the last channel marker, when the network has one.
  std::optional<PureState> at_channel;
};

// Applies every step in order. Each Pauli error is applied at the channel
// marker of its photon; an error for a photon without a marker throws
// std::invalid_argument.
Propagation propagate(const CircuitNetwork& network, const PureState& input,
                      std::span<const PauliError> errors = {});

// Detector groups are read as one trigger group named "T" plus photon slots
// keyed by the trailing digit of the group name ("e1" and "E1" are the two
// detectors of slot 1).
struct CoincidenceLayout {
  std::string trigger;
  std::vector<std::vector<std::string>> slots;
};

// Throws std::invalid_argument when there is no "T" group or a photon group
// name lacks a slot digit.
CoincidenceLayout coincidence_layout(const CircuitNetwork& network);

struct CoincidencePattern {
  std::string trigger;
  std::vector<std::string> photon_groups;

  // Photon groups concatenated, e.g. "e1e2E3".
  std::string label() const;
  // "{T, e1, e2, E3}".
  std::string to_string() const;
  bool operator==(const CoincidencePattern&) const = default;
};

// All trigger + one-group-per-slot combinations, slots in order.
std::vector<CoincidencePattern> enumerate_patterns(const CoincidenceLayout& layout);

}  // namespace ghzsim
