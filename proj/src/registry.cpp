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

#include "bodynet/registry.hpp"

#include "app_json.hpp"
#include "json_util.hpp"

namespace bodynet {

std::string_view to_string(AppStatus status) {
  switch (status) {
    case AppStatus::kPlanned:
      return "planned";
    case AppStatus::kRunning:
      return "running";
    case AppStatus::kSuspended:
      return "suspended";
  }
  return "planned";
}

AppStatus parse_app_status(std::string_view text) {
  if (text == "planned") return AppStatus::kPlanned;
  if (text == "running") return AppStatus::kRunning;
  if (text == "suspended") return AppStatus::kSuspended;
  throw ValidationError("status", "must be planned, running or suspended");
}

void Registry::register_app(AppSpec app) {
  if (apps_.contains(app.id)) {
    throw DuplicateIdError("app '" + app.id + "' is already registered");
  }
  auto it = catalog_.find(app.model_name);
  if (it == catalog_.end()) {
    throw UnknownModelError("model '" + app.model_name + "' is not in the catalog");
  }
  app.model = it->second;
  app.validate();
  status_[app.id] = AppStatus::kPlanned;
  const std::string id = app.id;
  apps_.emplace(id, std::move(app));
}

void Registry::unregister_app(std::string_view id) {
  auto it = apps_.find(id);
  if (it == apps_.end()) {
    throw UnknownIdError("app '" + std::string(id) + "' is not registered");
  }
  apps_.erase(it);
  status_.erase(status_.find(id));
}

void Registry::set_status(std::string_view id, AppStatus status) {
  auto it = status_.find(id);
  if (it == status_.end()) {
    throw UnknownIdError("app '" + std::string(id) + "' is not registered");
  }
  it->second = status;
}

AppStatus Registry::status(std::string_view id) const {
  auto it = status_.find(id);
  if (it == status_.end()) {
    throw UnknownIdError("app '" + std::string(id) + "' is not registered");
  }
  return it->second;
}

std::vector<AppSpec> Registry::apps() const {
  std::vector<AppSpec> out;
  for (const auto& [id, app] : apps_) out.push_back(app);
  return out;
}

std::string Registry::to_json() const {
  detail::OrderedJson j = detail::OrderedJson::array();
  for (const auto& [id, app] : apps_) {
    detail::OrderedJson entry = detail::app_to_json(app);
    entry["status"] = std::string(to_string(status_.at(id)));
    j.push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

Registry Registry::from_json(std::string_view text, ModelCatalog catalog) {
  const detail::Json doc = detail::parse_json_text(text, "registry");
  if (!doc.is_array()) throw ParseError("registry: expected an array");
  Registry r(std::move(catalog));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string ctx = "registry[" + std::to_string(i) + "]";
    AppSpec app = detail::parse_app(doc[i], ctx);
    const AppStatus status = parse_app_status(detail::get_string(doc[i], "status", ctx));
    const std::string id = app.id;
    r.register_app(std::move(app));
    r.set_status(id, status);
  }
  return r;
}

bool Registry::operator==(const Registry& other) const {
  return to_json() == other.to_json();
}

Registry register_app(Registry registry, AppSpec app) {
  registry.register_app(std::move(app));
  return registry;
}

Registry unregister_app(Registry registry, std::string_view id) {
  registry.unregister_app(id);
  return registry;
}

}  // namespace bodynet
