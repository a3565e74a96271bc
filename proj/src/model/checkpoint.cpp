// Copyright 2026 The cetx Authors.
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

#include "cetx/model/checkpoint.hpp"

#include "json.hpp"

#include "cetx/errors.hpp"
#include "cetx/hashing.hpp"
#include "cetx/graph/io.hpp"

namespace cetx {
namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "cetx-rgcn";
constexpr int kVersion = 1;

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.storage()}};
}

Matrix matrix_from_json(const json& j, const std::string& path) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != rows * cols) {
      throw ParseError("checkpoint " + path + ": data length " + std::to_string(data.size()) +
                       " does not match declared (" + std::to_string(rows) + " x " +
                       std::to_string(cols) + ")");
    }
    return Matrix(rows, cols, std::move(data));
  } catch (const json::exception& e) {
    throw ParseError("checkpoint " + path + ": " + e.what());
  }
}

}  // namespace

std::string serialize_checkpoint(const RgcnModel& model) {
  model.validate();
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["epoch"] = model.epoch;
  j["config_hash"] = hash_hex(model.config_hash);
  j["cell_count"] = model.cell_count;
  j["drug_count"] = model.drug_count;
  j["input"] = model.input == InputMode::kFree ? "free" : "projected";
  j["dims"] = model.dims;
  j["relations"] = kNumRelations;
  if (model.input == InputMode::kFree) {
    j["embedding"] = matrix_to_json(model.embedding);
  } else {
    j["cell_projection"] = matrix_to_json(model.cell_projection);
    j["drug_projection"] = matrix_to_json(model.drug_projection);
  }
  json layers = json::array();
  for (std::size_t l = 0; l < model.layers(); ++l) {
    json rel = json::array();
    for (const Matrix& w : model.relation_weights[l]) rel.push_back(matrix_to_json(w));
    json inv = json::array();
    for (const Matrix& w : model.inverse_weights[l]) inv.push_back(matrix_to_json(w));
    layers.push_back(json{{"relation_weights", rel},
                          {"inverse_weights", inv},
                          {"self_weight", matrix_to_json(model.self_weights[l])}});
  }
  j["layers"] = layers;
  j["relation_vectors"] = matrix_to_json(model.relation_vectors);
  return j.dump() + "\n";
}

RgcnModel parse_checkpoint(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("checkpoint: malformed JSON at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  RgcnModel m;
  try {
    if (j.at("format").get<std::string>() != kFormat) {
      throw ParseError("checkpoint /format: not a cetx checkpoint");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw ParseError("checkpoint /version: unsupported version");
    }
    if (j.at("relations").get<std::size_t>() != kNumRelations) {
      throw ParseError("checkpoint /relations: expected " + std::to_string(kNumRelations));
    }
    m.epoch = j.at("epoch").get<std::size_t>();
    m.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    m.cell_count = j.at("cell_count").get<std::size_t>();
    m.drug_count = j.at("drug_count").get<std::size_t>();
    const auto input = j.at("input").get<std::string>();
    if (input == "free") {
      m.input = InputMode::kFree;
      m.embedding = matrix_from_json(j.at("embedding"), "/embedding");
    } else if (input == "projected") {
      m.input = InputMode::kProjected;
      m.cell_projection = matrix_from_json(j.at("cell_projection"), "/cell_projection");
      m.drug_projection = matrix_from_json(j.at("drug_projection"), "/drug_projection");
    } else {
      throw ParseError("checkpoint /input: unknown mode '" + input + "'");
    }
    m.dims = j.at("dims").get<std::vector<std::size_t>>();
    const json& layers = j.at("layers");
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const std::string base = "/layers/" + std::to_string(l);
      auto read_block = [&](const char* key) {
        const json& arr = layers[l].at(key);
        if (arr.size() != kNumRelations) {
          throw ParseError("checkpoint " + base + "/" + key + ": expected " +
                           std::to_string(kNumRelations) + " matrices");
        }
        std::array<Matrix, kNumRelations> ws;
        for (std::size_t r = 0; r < kNumRelations; ++r) {
          ws[r] = matrix_from_json(arr[r], base + "/" + key + "/" + std::to_string(r));
        }
        return ws;
      };
      m.relation_weights.push_back(read_block("relation_weights"));
      m.inverse_weights.push_back(read_block("inverse_weights"));
      m.self_weights.push_back(matrix_from_json(layers[l].at("self_weight"), base + "/self_weight"));
    }
    m.relation_vectors = matrix_from_json(j.at("relation_vectors"), "/relation_vectors");
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("checkpoint /config_hash: not a hex string");
  }
  try {
    m.validate();
  } catch (const DimensionError& e) {
    throw ParseError(std::string("checkpoint: declared dimensions inconsistent: ") + e.what());
  }
  return m;
}

void save_checkpoint(const RgcnModel& model, const std::filesystem::path& path) {
  io::write_file(path, serialize_checkpoint(model));
}

RgcnModel load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(io::read_file(path));
}

}  // namespace cetx
