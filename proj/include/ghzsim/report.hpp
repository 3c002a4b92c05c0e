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

// JSON views of run results. Objects use sorted keys, so a fixed input
// always serializes to the same bytes.

#pragma once

#include <json.hpp>

#include "ghzsim/pipeline.hpp"
#include "ghzsim/verify.hpp"

namespace ghzsim {

nlohmann::json to_json(const NoiseFamily& family);
nlohmann::json to_json(const CoincidencePattern& pattern);
nlohmann::json to_json(const RunOptions& options);
nlohmann::json to_json(const ReportEntry& entry);
nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const MixtureReport& report);
// GHZps branches, each compared with its published state.
nlohmann::json ghzps_to_json(const std::vector<BranchRun>& runs, const RunOptions& options);
nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const std::vector<Check>& checks);

}  // namespace ghzsim
