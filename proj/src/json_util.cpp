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

#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace bodynet::detail {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed for '" + path.string() + "'");
  }
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

Json parse_json_text(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string field_name(std::string_view ctx, std::string_view key) {
  if (ctx.empty()) return std::string(key);
  return std::string(ctx) + "." + std::string(key);
}

const Json& require(const Json& obj, std::string_view key,
                    std::string_view ctx) {
  if (!obj.is_object()) {
    throw ParseError(std::string(ctx.empty() ? "document" : ctx) +
                     ": expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(field_name(ctx, key), "missing required field");
  }
  return *it;
}

const Json* optional_field(const Json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string get_string(const Json& obj, std::string_view key,
                       std::string_view ctx) {
  const Json& v = require(obj, key, ctx);
  if (!v.is_string()) {
    throw ParseError(field_name(ctx, key) + ": expected a string");
  }
  return v.get<std::string>();
}

std::uint64_t get_uint(const Json& obj, std::string_view key,
                       std::string_view ctx) {
  const Json& v = require(obj, key, ctx);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    throw ValidationError(field_name(ctx, key), "must be >= 0");
  }
  throw ParseError(field_name(ctx, key) + ": expected an integer");
}

double get_number(const Json& obj, std::string_view key, std::string_view ctx) {
  const Json& v = require(obj, key, ctx);
  if (!v.is_number()) {
    throw ParseError(field_name(ctx, key) + ": expected a number");
  }
  return v.get<double>();
}

bool get_bool(const Json& obj, std::string_view key, std::string_view ctx) {
  const Json& v = require(obj, key, ctx);
  if (!v.is_boolean()) {
    throw ParseError(field_name(ctx, key) + ": expected a boolean");
  }
  return v.get<bool>();
}

std::optional<std::string> get_optional_string(const Json& obj,
                                               std::string_view key,
                                               std::string_view ctx) {
  if (optional_field(obj, key) == nullptr) return std::nullopt;
  return get_string(obj, key, ctx);
}

std::optional<double> get_optional_number(const Json& obj, std::string_view key,
                                          std::string_view ctx) {
  if (optional_field(obj, key) == nullptr) return std::nullopt;
  return get_number(obj, key, ctx);
}

}  // namespace bodynet::detail
