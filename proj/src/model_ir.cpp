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

#include "bodynet/model_ir.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "bodynet/error.hpp"
#include "json_util.hpp"

namespace bodynet {

using detail::Json;

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv:
      return "conv";
    case LayerKind::kPool:
      return "pool";
    case LayerKind::kFc:
      return "fc";
    case LayerKind::kElementwise:
      return "elementwise";
  }
  return "conv";
}

LayerKind parse_layer_kind(std::string_view text) {
  if (text == "conv") return LayerKind::kConv;
  if (text == "pool") return LayerKind::kPool;
  if (text == "fc") return LayerKind::kFc;
  if (text == "elementwise") return LayerKind::kElementwise;
  throw ValidationError("kind", "unknown layer kind '" + std::string(text) +
                                    "' (expected conv, pool, fc, elementwise)");
}

bool QuantConfig::is_supported(int weight_bits) noexcept {
  return weight_bits == 1 || weight_bits == 2 || weight_bits == 4 ||
         weight_bits == 8;
}

QuantConfig::QuantConfig(int weight_bits) : weight_bits_(weight_bits) {
  if (!is_supported(weight_bits)) {
    throw ValidationError("quant_bits", "quant bits must be 1,2,4,8 (got " +
                                            std::to_string(weight_bits) + ")");
  }
}

std::uint64_t ModelGraph::input_bytes_of(std::size_t index) const {
  if (index >= layers.size()) {
    throw RangeError("layer index " + std::to_string(index) + " out of range");
  }
  return index == 0 ? input_bytes : layers[index - 1].out_activation_bytes;
}

void ModelGraph::validate() const {
  if (name.empty()) throw ValidationError("name", "must be non-empty");
  if (layers.empty()) throw ValidationError("layers", "must be non-empty");
  if (input_bytes < 1) throw ValidationError("input_bytes", "must be >= 1");
  if (!QuantConfig::is_supported(quant.weight_bits())) {
    throw ValidationError("quant_bits", "quant bits must be 1,2,4,8");
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& layer = layers[i];
    if (layer.id.empty()) {
      throw ValidationError("layers[" + std::to_string(i) + "].id",
                            "must be non-empty");
    }
    if (!seen.insert(layer.id).second) {
      throw ValidationError(layer.id, "duplicate layer id '" + layer.id + "'");
    }
    const bool weightless =
        layer.kind == LayerKind::kPool || layer.kind == LayerKind::kElementwise;
    if (weightless && layer.weight_count != 0) {
      throw ValidationError(layer.id + ".weight_count",
                            "pool and elementwise layers carry no weights");
    }
    if (i + 1 < layers.size() && layer.out_activation_bytes < 1) {
      throw ValidationError(layer.id + ".out_activation_bytes",
                            "must be >= 1 for non-terminal layers");
    }
  }
  for (const auto& [bits, acc] : accuracy) {
    if (!QuantConfig::is_supported(bits)) {
      throw ValidationError("accuracy", "key must be one of 1,2,4,8");
    }
    if (!(acc >= 0.0 && acc <= 1.0)) {
      throw ValidationError("accuracy", "values must lie in [0, 1]");
    }
  }
}

namespace {

// Orders layers topologically using their `inputs` lists. Layers with no
// listed inputs consume the model input. Ties resolve by file order.
std::vector<LayerSpec> serialize_dag(
    std::vector<LayerSpec> layers,
    const std::vector<std::vector<std::string>>& inputs) {
  const std::size_t n = layers.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(layers[i].id, i).second) {
      throw ValidationError(layers[i].id,
                            "duplicate layer id '" + layers[i].id + "'");
    }
  }
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::string& src : inputs[i]) {
      auto it = index.find(src);
      if (it == index.end()) {
        throw ValidationError(layers[i].id + ".inputs",
                              "unknown input layer '" + src + "'");
      }
      succ[it->second].push_back(i);
      ++indegree[i];
    }
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  std::vector<LayerSpec> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(std::move(layers[i]));
    for (std::size_t s : succ[i]) {
      if (--indegree[s] == 0) ready.insert(s);
    }
  }
  if (order.size() != n) {
    throw ValidationError("layers", "layer graph is cyclic");
  }
  return order;
}

LayerSpec parse_layer(const Json& j, std::size_t index) {
  const std::string ctx = "layers[" + std::to_string(index) + "]";
  LayerSpec layer;
  layer.id = detail::get_string(j, "id", ctx);
  layer.kind = parse_layer_kind(detail::get_string(j, "kind", ctx));
  layer.macs = detail::get_uint(j, "macs", ctx);
  layer.weight_count = detail::get_uint(j, "weight_count", ctx);
  layer.bias_count = detail::get_uint(j, "bias_count", ctx);
  layer.out_activation_bytes = detail::get_uint(j, "out_activation_bytes", ctx);
  return layer;
}

}  // namespace

ModelGraph parse_model(std::string_view json_text) {
  const Json doc = detail::parse_json_text(json_text, "model");
  if (!doc.is_object()) throw ParseError("model: expected an object");

  ModelGraph graph;
  graph.name = detail::get_string(doc, "name", "");
  const Json& bits = detail::require(doc, "quant_bits", "");
  if (!bits.is_number_integer()) {
    throw ParseError("quant_bits: expected an integer");
  }
  graph.quant = QuantConfig(bits.get<int>());
  graph.input_bytes = detail::get_uint(doc, "input_bytes", "");

  const Json& layers = detail::require(doc, "layers", "");
  if (!layers.is_array()) throw ParseError("layers: expected an array");
  std::vector<std::vector<std::string>> inputs;
  bool has_inputs = false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    graph.layers.push_back(parse_layer(layers[i], i));
    std::vector<std::string> ins;
    if (const Json* in = detail::optional_field(layers[i], "inputs")) {
      has_inputs = true;
      if (!in->is_array()) {
        throw ParseError("layers[" + std::to_string(i) +
                         "].inputs: expected an array");
      }
      for (const Json& s : *in) {
        if (!s.is_string()) throw ParseError("inputs: expected strings");
        ins.push_back(s.get<std::string>());
      }
    }
    inputs.push_back(std::move(ins));
  }
  if (has_inputs) {
    graph.layers = serialize_dag(std::move(graph.layers), inputs);
  }

  if (const Json* acc = detail::optional_field(doc, "accuracy")) {
    if (!acc->is_object()) throw ParseError("accuracy: expected an object");
    for (const auto& [key, value] : acc->items()) {
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ValidationError("accuracy", "key '" + key + "' is not an integer");
      }
      if (!value.is_number()) throw ParseError("accuracy: expected numbers");
      graph.accuracy[k] = value.get<double>();
    }
  }
  graph.validate();
  return graph;
}

ModelGraph load_model(const std::filesystem::path& path) {
  return parse_model(detail::read_text_file(path));
}

std::string model_to_json(const ModelGraph& graph) {
  detail::OrderedJson doc;
  doc["name"] = graph.name;
  doc["quant_bits"] = graph.quant.weight_bits();
  doc["input_bytes"] = graph.input_bytes;
  auto layers = detail::OrderedJson::array();
  for (const LayerSpec& layer : graph.layers) {
    detail::OrderedJson l;
    l["id"] = layer.id;
    l["kind"] = std::string(to_string(layer.kind));
    l["macs"] = layer.macs;
    l["weight_count"] = layer.weight_count;
    l["bias_count"] = layer.bias_count;
    l["out_activation_bytes"] = layer.out_activation_bytes;
    layers.push_back(std::move(l));
  }
  doc["layers"] = std::move(layers);
  if (!graph.accuracy.empty()) {
    detail::OrderedJson acc = detail::OrderedJson::object();
    for (const auto& [bits, value] : graph.accuracy) {
      acc[std::to_string(bits)] = value;
    }
    doc["accuracy"] = std::move(acc);
  }
  return doc.dump(2) + "\n";
}

void write_model(const ModelGraph& graph, const std::filesystem::path& path) {
  detail::write_text_file(path, model_to_json(graph));
}

namespace {

void check_range(const ModelGraph& graph, LayerRange range) {
  if (range.begin > range.end || range.end > graph.layers.size()) {
    throw RangeError("layer range [" + std::to_string(range.begin) + ", " +
                     std::to_string(range.end) + ") outside model '" +
                     graph.name + "' with " +
                     std::to_string(graph.layers.size()) + " layers");
  }
}

}  // namespace

std::uint64_t weight_footprint(const ModelGraph& graph, LayerRange range) {
  check_range(graph, range);
  std::uint64_t bits = 0;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    bits += graph.layers[i].weight_count *
            static_cast<std::uint64_t>(graph.quant.weight_bits());
  }
  return (bits + 7) / 8;
}

std::uint64_t bias_footprint(const ModelGraph& graph, LayerRange range) {
  check_range(graph, range);
  std::uint64_t bytes = 0;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    bytes += graph.layers[i].bias_count;
  }
  return bytes;
}

std::uint64_t activation_footprint(const ModelGraph& graph, LayerRange range) {
  check_range(graph, range);
  std::uint64_t max_in = 0;
  std::uint64_t max_out = 0;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    max_in = std::max(max_in, graph.input_bytes_of(i));
    max_out = std::max(max_out, graph.layers[i].out_activation_bytes);
  }
  return max_in + max_out;
}

std::uint64_t total_weight_footprint(const ModelGraph& graph) {
  return weight_footprint(graph, {0, graph.layers.size()});
}

std::vector<LayerRange> segment(const ModelGraph& graph,
                                std::span<const std::size_t> cuts) {
  const std::size_t n = graph.layers.size();
  std::vector<LayerRange> ranges;
  ranges.reserve(cuts.size() + 1);
  std::size_t begin = 0;
  for (std::size_t cut : cuts) {
    if (cut == 0 || cut >= n) {
      throw CutError("cut " + std::to_string(cut) + " outside (0, " +
                     std::to_string(n) + ")");
    }
    if (cut <= begin) {
      throw CutError("cuts must be strictly increasing (got " +
                     std::to_string(cut) + " after " + std::to_string(begin) +
                     ")");
    }
    ranges.push_back({begin, cut});
    begin = cut;
  }
  ranges.push_back({begin, n});
  return ranges;
}

}  // namespace bodynet
