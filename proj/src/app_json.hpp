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

#ifndef BODYNET_SRC_APP_JSON_HPP_
#define BODYNET_SRC_APP_JSON_HPP_

#include <string>

#include "bodynet/fleet.hpp"
#include "json_util.hpp"

namespace bodynet::detail {

/// Reads an app entry. The model stays unresolved; `model_name` is set.
/// A capability is either a bare tag or {"tag", "body_location"}.
AppSpec parse_app(const Json& j, const std::string& ctx);

OrderedJson app_to_json(const AppSpec& app);

}  // namespace bodynet::detail

#endif  // BODYNET_SRC_APP_JSON_HPP_
