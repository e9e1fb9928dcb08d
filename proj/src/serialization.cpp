// Copyright 2026 The doeblin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#include "doeblin/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doeblin/errors.hpp"

namespace doeblin::io {

using nlohmann::json;

namespace {

json require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

json model_to_json(const PairwiseModel& model) {
  json edges = json::array();
  for (const Edge& e : model.edges()) edges.push_back({e.u, e.v});
  return json{{"V", model.space().num_variables()},
              {"K", model.space().labels_per_variable()},
              {"edges", edges},
              {"theta", model.theta()}};
}

PairwiseModel model_from_json(const json& j) {
  try {
    const StateSpace space(require(j, "V").get<std::size_t>(),
                           require(j, "K").get<std::size_t>());
    std::vector<Edge> edges;
    for (const auto& pair : require(j, "edges")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ConfigError("model edge must be a [u, v] pair");
      }
      edges.push_back({pair[0].get<std::size_t>(), pair[1].get<std::size_t>()});
    }
    return PairwiseModel(space, std::move(edges),
                         require(j, "theta").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed model file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid model file: ") + e.what());
  }
}

json reference_to_json(const ReferenceModel& reference) {
  return json{{"V", reference.space().num_variables()},
              {"K", reference.space().labels_per_variable()},
              {"q", reference.q()}};
}

ReferenceModel reference_from_json(const json& j) {
  try {
    const StateSpace space(require(j, "V").get<std::size_t>(),
                           require(j, "K").get<std::size_t>());
    return ReferenceModel(space,
                          require(j, "q").get<std::vector<std::vector<double>>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed reference file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid reference file: ") + e.what());
  }
}

void write_model(const std::filesystem::path& path, const PairwiseModel& model) {
  write_text_file(path, model_to_json(model).dump(2) + "\n");
}

PairwiseModel read_model(const std::filesystem::path& path) {
  return model_from_json(json::parse(read_text_file(path)));
}

void write_reference(const std::filesystem::path& path, const ReferenceModel& reference) {
  write_text_file(path, reference_to_json(reference).dump(2) + "\n");
}

ReferenceModel read_reference(const std::filesystem::path& path) {
  return reference_from_json(json::parse(read_text_file(path)));
}

void write_dataset(const std::filesystem::path& path, std::span<const State> rows) {
  std::ostringstream out;
  for (const State& row : rows) {
    for (std::size_t v = 0; v < row.size(); ++v) {
      if (v > 0) out << ' ';
      out << row[v];
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

std::vector<State> read_dataset(const std::filesystem::path& path,
                                const StateSpace& space) {
  std::istringstream in(read_text_file(path));
  std::vector<State> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    State row;
    std::int64_t label;
    while (fields >> label) row.push_back(static_cast<std::int32_t>(label));
    if (!space.contains(row)) {
      throw ConfigError("dataset " + path.string() + " line " +
                        std::to_string(line_no) + ": row does not fit the state space");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file: " + path.string());
  out << content;
  if (!out.flush()) throw ConfigError("short write: " + path.string());
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace doeblin::io
