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

#include <filesystem>
#include <string>
#include <string_view>

#include "cetx/model/rgcn.hpp"

namespace cetx {

// Versioned JSON container. Doubles are written in shortest round-trip form,
// so save followed by load reproduces every parameter bit for bit.
std::string serialize_checkpoint(const RgcnModel& model);
// Throws ParseError with the byte offset (syntax) or JSON path (schema).
RgcnModel parse_checkpoint(std::string_view text);

void save_checkpoint(const RgcnModel& model, const std::filesystem::path& path);
RgcnModel load_checkpoint(const std::filesystem::path& path);

}  // namespace cetx
