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

// Application registry. Registering adds an app for the next planning pass;
// unregistering drops it there and frees whatever it reserved.

#ifndef BODYNET_REGISTRY_HPP_
#define BODYNET_REGISTRY_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bodynet/fleet.hpp"
#include "bodynet/scenario.hpp"

namespace bodynet {

enum class AppStatus { kPlanned, kRunning, kSuspended };

std::string_view to_string(AppStatus status);
AppStatus parse_app_status(std::string_view text);

class Registry {
 public:
  Registry() = default;
  explicit Registry(ModelCatalog catalog) : catalog_(std::move(catalog)) {}

  /// DuplicateIdError if the id is taken; UnknownModelError if the model
  /// name is not in the catalog.
  void register_app(AppSpec app);
  /// UnknownIdError if absent.
  void unregister_app(std::string_view id);
  void set_status(std::string_view id, AppStatus status);

  bool contains(std::string_view id) const { return apps_.contains(id); }
  AppStatus status(std::string_view id) const;
  std::size_t size() const noexcept { return apps_.size(); }
  /// Registered apps in id order, models resolved.
  std::vector<AppSpec> apps() const;
  const ModelCatalog& catalog() const noexcept { return catalog_; }

  /// Apps and statuses only; the catalog is supplied again on load.
  std::string to_json() const;
  static Registry from_json(std::string_view text, ModelCatalog catalog);

  /// Same apps (by content) with the same statuses.
  bool operator==(const Registry& other) const;

 private:
  ModelCatalog catalog_;
  std::map<std::string, AppSpec, std::less<>> apps_;
  std::map<std::string, AppStatus, std::less<>> status_;
};

/// Pure forms of the two registry operations.
Registry register_app(Registry registry, AppSpec app);
Registry unregister_app(Registry registry, std::string_view id);

}  // namespace bodynet

#endif  // BODYNET_REGISTRY_HPP_
