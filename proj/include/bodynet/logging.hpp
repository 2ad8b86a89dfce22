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

#ifndef BODYNET_LOGGING_HPP_
#define BODYNET_LOGGING_HPP_

#include <optional>
#include <string_view>

#include <spdlog/common.h>

namespace bodynet {

/// error | warn | info | debug; nullopt for anything else.
std::optional<spdlog::level::level_enum> parse_log_level(std::string_view text);

/// Routes diagnostics to stderr at the level named by BODYNET_LOG
/// (default warn).
void init_logging();

}  // namespace bodynet

#endif  // BODYNET_LOGGING_HPP_
