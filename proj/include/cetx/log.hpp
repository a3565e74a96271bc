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

#include <spdlog/spdlog.h>

#include <string_view>

// Thin wrapper over spdlog writing to stderr. Verbosity comes from the
// CETX_LOG_LEVEL environment variable (trace|debug|info|warn|error|off),
// default "warn".
namespace cetx::log {

spdlog::logger& logger();
void set_level(std::string_view level);

template <typename... Args>
void debug(std::string_view fmt, Args&&... args) {
  logger().debug(fmt::runtime(fmt), std::forward<Args>(args)...);
}
template <typename... Args>
void info(std::string_view fmt, Args&&... args) {
  logger().info(fmt::runtime(fmt), std::forward<Args>(args)...);
}
template <typename... Args>
void warn(std::string_view fmt, Args&&... args) {
  logger().warn(fmt::runtime(fmt), std::forward<Args>(args)...);
}
template <typename... Args>
void error(std::string_view fmt, Args&&... args) {
  logger().error(fmt::runtime(fmt), std::forward<Args>(args)...);
}

}  // namespace cetx::log
