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

// Model graphs: layer chains with quantization-dependent memory footprints.
//
// A model is a linear chain of layers. Files may describe a DAG through the
// optional per-layer `inputs` list; it is serialized topologically at load
// time (ties resolved by file order) and cycles are rejected.

#ifndef BODYNET_MODEL_IR_HPP_
#define BODYNET_MODEL_IR_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bodynet {

enum class LayerKind { kConv, kPool, kFc, kElementwise };

std::string_view to_string(LayerKind kind);
LayerKind parse_layer_kind(std::string_view text);

struct LayerSpec {
  std::string id;
  LayerKind kind = LayerKind::kConv;
  std::uint64_t macs = 0;
  std::uint64_t weight_count = 0;
  std::uint64_t bias_count = 0;
  // Bytes produced per inference at the model's activation width.
  std::uint64_t out_activation_bytes = 0;

  bool operator==(const LayerSpec&) const = default;
};

/// Weight quantization width. Only 1, 2, 4 and 8 bits are representable.
class QuantConfig {
 public:
  QuantConfig() = default;
  explicit QuantConfig(int weight_bits);

  static bool is_supported(int weight_bits) noexcept;

  int weight_bits() const noexcept { return weight_bits_; }

  bool operator==(const QuantConfig&) const = default;

 private:
  int weight_bits_ = 8;
};

/// Half-open layer index range [begin, end).
struct LayerRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return begin >= end; }

  bool operator==(const LayerRange&) const = default;
};

struct ModelGraph {
  std::string name;
  std::vector<LayerSpec> layers;
  QuantConfig quant;
  std::uint64_t input_bytes = 1;
  // quant bits -> accuracy fraction. Informational only.
  std::map<int, double> accuracy;

  std::size_t layer_count() const noexcept { return layers.size(); }

  /// Bytes consumed by layer `index`: the model input for layer 0, the
  /// previous layer's output otherwise.
  std::uint64_t input_bytes_of(std::size_t index) const;

  /// Throws ValidationError naming the first violated field.
  void validate() const;

  bool operator==(const ModelGraph&) const = default;
};

ModelGraph parse_model(std::string_view json_text);
ModelGraph load_model(const std::filesystem::path& path);
std::string model_to_json(const ModelGraph& graph);
void write_model(const ModelGraph& graph, const std::filesystem::path& path);

/// ceil(sum(weight_count) * weight_bits / 8) over the range.
std::uint64_t weight_footprint(const ModelGraph& graph, LayerRange range);

/// Biases are stored at 8 bits each regardless of weight quantization.
std::uint64_t bias_footprint(const ModelGraph& graph, LayerRange range);

/// Data memory for a resident segment: largest input activation plus largest
/// output activation within the range (double buffering).
std::uint64_t activation_footprint(const ModelGraph& graph, LayerRange range);

std::uint64_t total_weight_footprint(const ModelGraph& graph);

/// Splits the chain at the given cut indices. Cuts must be strictly
/// increasing and lie in (0, layer_count); k cuts give k + 1 ranges.
std::vector<LayerRange> segment(const ModelGraph& graph,
                                std::span<const std::size_t> cuts);

}  // namespace bodynet

#endif  // BODYNET_MODEL_IR_HPP_
