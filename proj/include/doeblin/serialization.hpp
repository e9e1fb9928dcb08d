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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "doeblin/pairwise_model.hpp"
#include "doeblin/reference_model.hpp"
#include "doeblin/state_space.hpp"

// On-disk formats. Models and references are JSON documents; doubles are
// written with shortest-round-trip precision, so parse -> serialize is
// bit-exact on the decimal representations. Datasets are plain text, one
// row per line, labels as space-separated integers.
namespace doeblin::io {

nlohmann::json model_to_json(const PairwiseModel& model);
PairwiseModel model_from_json(const nlohmann::json& j);

nlohmann::json reference_to_json(const ReferenceModel& reference);
ReferenceModel reference_from_json(const nlohmann::json& j);

void write_model(const std::filesystem::path& path, const PairwiseModel& model);
PairwiseModel read_model(const std::filesystem::path& path);

void write_reference(const std::filesystem::path& path, const ReferenceModel& reference);
ReferenceModel read_reference(const std::filesystem::path& path);

void write_dataset(const std::filesystem::path& path, std::span<const State> rows);
std::vector<State> read_dataset(const std::filesystem::path& path,
                                const StateSpace& space);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

// Fixed-width decimal for metrics tables: deterministic and diff-friendly.
std::string format_double(double value);

// FNV-1a hex digest of a string; used to stamp outputs with their config.
std::string fnv1a_hex(const std::string& text);

}  // namespace doeblin::io
