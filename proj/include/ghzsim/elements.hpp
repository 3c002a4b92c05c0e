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

// Optical elements as rail-level mode transforms.
//
// Conventions:
//   PBS   transmits H and reflects V; in1:H -> out_t, in1:V -> out_r,
//         in2:H -> out_r, in2:V -> out_t. No reflection phase.
//   BS    50:50, polarization preserving; in1 -> (out1 + out2)/sqrt2,
//         in2 -> (out1 - out2)/sqrt2.
//   HWP45 Hadamard on polarization, in place.
//   HWP90 H <-> V, in place.
//   route relabels a spatial mode.
// A missing second input of a PBS or BS is a vacuum port; the resulting
// transform is an isometry.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghzsim/state.hpp"

namespace ghzsim {

enum class ElementKind { kPbs, kBs, kHwp45, kHwp90, kRoute };

const char* keyword(ElementKind kind);

class NetworkElement {
 public:
  NetworkElement(ElementKind kind, std::vector<std::optional<SpatialMode>> inputs,
                 std::vector<SpatialMode> outputs, ModeTransform transform);

  ElementKind kind() const { return kind_; }
  // Port lists as written; absent vacuum ports are std::nullopt.
  const std::vector<std::optional<SpatialMode>>& inputs() const { return inputs_; }
  const std::vector<SpatialMode>& outputs() const { return outputs_; }
  const ModeTransform& transform() const { return transform_; }
  std::string name() const;

  // In-place elements (wave plates) keep their mode live.
  bool in_place() const {
    return kind_ == ElementKind::kHwp45 || kind_ == ElementKind::kHwp90;
  }

 private:
  ElementKind kind_;
  std::vector<std::optional<SpatialMode>> inputs_;
  std::vector<SpatialMode> outputs_;
  ModeTransform transform_;
};

// Throws std::invalid_argument on repeated modes.
NetworkElement make_pbs(const SpatialMode& in1, const std::optional<SpatialMode>& in2,
                        const SpatialMode& out_t, const SpatialMode& out_r);
NetworkElement make_bs(const SpatialMode& in1, const std::optional<SpatialMode>& in2,
                       const SpatialMode& out1, const SpatialMode& out2);
NetworkElement make_hwp45(const SpatialMode& mode);
NetworkElement make_hwp90(const SpatialMode& mode);
NetworkElement make_route(const SpatialMode& from, const SpatialMode& to);

PureState apply_element(const PureState& state, const NetworkElement& element);

}  // namespace ghzsim
