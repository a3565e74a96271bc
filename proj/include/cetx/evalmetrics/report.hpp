// Copyright 2026 The cetx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cetx/evalmetrics/metrics.hpp"

namespace cetx {

nlohmann::json report_to_json(const MetricsReport& report, std::uint64_t config_hash = 0);

// method,k,precision,recall,f1,stability,prop_res,prop_sen,prop_dsim,prop_csim
// Undefined values are written as empty fields.
std::string format_summary_csv(const std::vector<MetricsReport>& reports);

}  // namespace cetx
