// Copyright 2026 The BodyNet Authors
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

#include "bodynet/logging.hpp"

#include <cstdlib>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace bodynet {

std::optional<spdlog::level::level_enum> parse_log_level(std::string_view text) {
  if (text == "error") return spdlog::level::err;
  if (text == "warn") return spdlog::level::warn;
  if (text == "info") return spdlog::level::info;
  if (text == "debug") return spdlog::level::debug;
  return std::nullopt;
}

void init_logging() {
  static const auto logger = [] {
    auto l = spdlog::stderr_color_mt("bodynet");
    spdlog::set_default_logger(l);
    return l;
  }();
  const char* env = std::getenv("BODYNET_LOG");
  const auto level = parse_log_level(env ? env : "");
  logger->set_level(level.value_or(spdlog::level::warn));
  if (env && !level) {
    spdlog::warn("BODYNET_LOG='{}' is not one of error, warn, info, debug", env);
  }
}

}  // namespace bodynet
