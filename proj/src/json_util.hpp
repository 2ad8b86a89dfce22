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

// Private helpers shared by the file loaders.

#ifndef BODYNET_SRC_JSON_UTIL_HPP_
#define BODYNET_SRC_JSON_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "bodynet/error.hpp"
#include "json.hpp"

namespace bodynet::detail {

using Json = nlohmann::json;
// Key order preserved on output so written files read like hand-written ones.
using OrderedJson = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Json parse_json_text(std::string_view text, std::string_view what);

const Json& require(const Json& obj, std::string_view key, std::string_view ctx);
const Json* optional_field(const Json& obj, std::string_view key);

std::string get_string(const Json& obj, std::string_view key,
                       std::string_view ctx);
std::uint64_t get_uint(const Json& obj, std::string_view key,
                       std::string_view ctx);
double get_number(const Json& obj, std::string_view key, std::string_view ctx);
bool get_bool(const Json& obj, std::string_view key, std::string_view ctx);

std::optional<std::string> get_optional_string(const Json& obj,
                                               std::string_view key,
                                               std::string_view ctx);
std::optional<double> get_optional_number(const Json& obj, std::string_view key,
                                          std::string_view ctx);

std::string field_name(std::string_view ctx, std::string_view key);

}  // namespace bodynet::detail

#endif  // BODYNET_SRC_JSON_UTIL_HPP_
