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

#include "ghzsim/elements.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace ghzsim {

namespace {

constexpr Polarization kH = Polarization::H;
constexpr Polarization kV = Polarization::V;

void require_distinct(std::vector<SpatialMode> modes, const char* what) {
  std::sort(modes.begin(), modes.end());
  auto dup = std::adjacent_find(modes.begin(), modes.end());
  if (dup != modes.end()) {
    throw std::invalid_argument(std::string(what) + " uses mode " + dup->id() + " twice");
  }
}

// Builds a transform from (input rail, output rail, amplitude) triples.
ModeTransform sparse_transform(
    const std::vector<Rail>& inputs, const std::vector<Rail>& outputs,
    const std::vector<std::tuple<Rail, Rail, Complex>>& entries) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(outputs.size()),
                                              static_cast<Eigen::Index>(inputs.size()));
  auto index = [](const std::vector<Rail>& rails, const Rail& r) {
    return std::find(rails.begin(), rails.end(), r) - rails.begin();
  };
  for (const auto& [in, out, amp] : entries) m(index(outputs, out), index(inputs, in)) = amp;
  return ModeTransform(inputs, outputs, std::move(m));
}

}  // namespace

const char* keyword(ElementKind kind) {
  switch (kind) {
    case ElementKind::kPbs:
      return "pbs";
    case ElementKind::kBs:
      return "bs";
    case ElementKind::kHwp45:
      return "hwp45";
    case ElementKind::kHwp90:
      return "hwp90";
    case ElementKind::kRoute:
      return "route";
  }
  return "?";
}

NetworkElement::NetworkElement(ElementKind kind,
                               std::vector<std::optional<SpatialMode>> inputs,
                               std::vector<SpatialMode> outputs, ModeTransform transform)
    : kind_(kind),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      transform_(std::move(transform)) {}

std::string NetworkElement::name() const {
  std::string out = keyword(kind_);
  for (const auto& in : inputs_) out += " " + (in ? in->id() : std::string("-"));
  if (!in_place()) {
    out += " ->";
    for (const auto& o : outputs_) out += " " + o.id();
  }
  return out;
}

NetworkElement make_pbs(const SpatialMode& in1, const std::optional<SpatialMode>& in2,
                        const SpatialMode& out_t, const SpatialMode& out_r) {
  std::vector<SpatialMode> all{in1, out_t, out_r};
  if (in2) all.push_back(*in2);
  require_distinct(all, "pbs");

  std::vector<Rail> inputs{{in1, kH}, {in1, kV}};
  std::vector<std::tuple<Rail, Rail, Complex>> entries{
      {{in1, kH}, {out_t, kH}, 1.0},
      {{in1, kV}, {out_r, kV}, 1.0},
  };
  std::vector<Rail> outputs{{out_t, kH}, {out_r, kV}};
  if (in2) {
    inputs.push_back({*in2, kH});
    inputs.push_back({*in2, kV});
    outputs.push_back({out_r, kH});
    outputs.push_back({out_t, kV});
    entries.push_back({{*in2, kH}, {out_r, kH}, 1.0});
    entries.push_back({{*in2, kV}, {out_t, kV}, 1.0});
  }
  return NetworkElement(ElementKind::kPbs, {in1, in2}, {out_t, out_r},
                        sparse_transform(inputs, outputs, entries));
}

NetworkElement make_bs(const SpatialMode& in1, const std::optional<SpatialMode>& in2,
                       const SpatialMode& out1, const SpatialMode& out2) {
  std::vector<SpatialMode> all{in1, out1, out2};
  if (in2) all.push_back(*in2);
  require_distinct(all, "bs");

  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Rail> inputs;
  std::vector<Rail> outputs;
  std::vector<std::tuple<Rail, Rail, Complex>> entries;
  for (Polarization p : {kH, kV}) {
    inputs.push_back({in1, p});
    outputs.push_back({out1, p});
    outputs.push_back({out2, p});
    entries.push_back({{in1, p}, {out1, p}, r});
    entries.push_back({{in1, p}, {out2, p}, r});
    if (in2) {
      inputs.push_back({*in2, p});
      entries.push_back({{*in2, p}, {out1, p}, r});
      entries.push_back({{*in2, p}, {out2, p}, -r});
    }
  }
  return NetworkElement(ElementKind::kBs, {in1, in2}, {out1, out2},
                        sparse_transform(inputs, outputs, entries));
}

NetworkElement make_hwp45(const SpatialMode& mode) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Rail> rails{{mode, kH}, {mode, kV}};
  Eigen::MatrixXcd m(2, 2);
  m << r, r, r, -r;
  return NetworkElement(ElementKind::kHwp45, {mode}, {mode}, ModeTransform(rails, rails, m));
}

NetworkElement make_hwp90(const SpatialMode& mode) {
  std::vector<Rail> rails{{mode, kH}, {mode, kV}};
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return NetworkElement(ElementKind::kHwp90, {mode}, {mode}, ModeTransform(rails, rails, m));
}

NetworkElement make_route(const SpatialMode& from, const SpatialMode& to) {
  require_distinct({from, to}, "route");
  std::vector<Rail> inputs{{from, kH}, {from, kV}};
  std::vector<Rail> outputs{{to, kH}, {to, kV}};
  return NetworkElement(ElementKind::kRoute, {from}, {to},
                        ModeTransform(inputs, outputs, Eigen::MatrixXcd::Identity(2, 2)));
}

PureState apply_element(const PureState& state, const NetworkElement& element) {
  return apply_mode_transform(state, element.transform());
}

}  // namespace ghzsim
