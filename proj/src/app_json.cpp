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

#include "app_json.hpp"

namespace bodynet::detail {

namespace {

CapabilityNeed parse_need(const Json& j, std::string_view key,
                          const std::string& ctx) {
  const Json& v = require(j, key, ctx);
  CapabilityNeed need;
  if (v.is_string()) {
    need.tag = v.get<std::string>();
    return need;
  }
  if (!v.is_object()) {
    throw ParseError(field_name(ctx, key) + ": expected a tag or an object");
  }
  const std::string sub = field_name(ctx, key);
  need.tag = get_string(v, "tag", sub);
  need.body_location = get_optional_string(v, "body_location", sub);
  return need;
}

OrderedJson need_to_json(const CapabilityNeed& need) {
  if (!need.body_location) return need.tag;
  OrderedJson j;
  j["tag"] = need.tag;
  j["body_location"] = *need.body_location;
  return j;
}

}  // namespace

AppSpec parse_app(const Json& j, const std::string& ctx) {
  if (!j.is_object()) throw ParseError(ctx + ": expected an object");
  AppSpec app;
  app.id = get_string(j, "id", ctx);
  app.sensor = parse_need(j, "sensor", ctx);
  app.model_name = get_string(j, "model", ctx);
  app.postprocess = get_optional_string(j, "postprocess", ctx).value_or("none");
  app.postprocess_latency_s =
      get_optional_number(j, "postprocess_latency_s", ctx).value_or(0.0);
  app.output = parse_need(j, "output", ctx);
  return app;
}

OrderedJson app_to_json(const AppSpec& app) {
  OrderedJson j;
  j["id"] = app.id;
  j["sensor"] = need_to_json(app.sensor);
  j["model"] = app.model_name;
  j["postprocess"] = app.postprocess;
  j["postprocess_latency_s"] = app.postprocess_latency_s;
  j["output"] = need_to_json(app.output);
  return j;
}

}  // namespace bodynet::detail
