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

// JSON dump of a pure state: an array of
//   {"ket": [["D1", "H", 1], ...], "re": x, "im": y}
// with kets in canonical order.

#pragma once

#include <json.hpp>

#include "ghzsim/state.hpp"

namespace ghzsim {

nlohmann::json to_json(const FockKet& ket);
nlohmann::json to_json(const PureState& state);

// Throws nlohmann::json::exception or std::invalid_argument on malformed
// input.
FockKet ket_from_json(const nlohmann::json& j);
PureState state_from_json(const nlohmann::json& j);

}  // namespace ghzsim
