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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "doeblin/pairwise_model.hpp"

namespace doeblin::cli {

// Graph description: either a named topology ("chain" over V variables,
// "grid" over grid_rows x grid_cols with 4-neighbor edges) or an explicit
// edge list.
struct ModelSpec {
  std::size_t num_variables = 0;  // derived for "grid"
  std::size_t labels = 2;
  std::string topology = "chain";  // "chain" | "grid" | "edges"
  std::size_t grid_rows = 0;
  std::size_t grid_cols = 0;
  std::vector<Edge> edges;  // used when topology == "edges"

  std::vector<Edge> build_edges() const;
  StateSpace space() const;
};

struct ReferenceSpec {
  std::string type = "fit";  // "fit" (smoothed data marginals) | "uniform"
  double alpha = 1.0;
};

struct TeacherSpec {
  std::string init = "gaussian";  // "gaussian" | "zero" | "explicit"
  double sigma = 1.0;
  std::vector<double> theta;  // used when init == "explicit"
};

struct GenSection {
  std::size_t n_train = 1000;
  std::size_t n_heldout = 0;
};

struct TrainSection {
  std::uint64_t iterations = 400;
  std::size_t minibatch = 32;
  std::size_t particles = 100;
  double eta0 = 0.5;
  double tau = 200.0;
  std::uint64_t eval_every = 50;
  // Optional piecewise-constant (iteration, epsilon) knots; empty means
  // constant at the top-level epsilon.
  std::vector<std::pair<std::uint64_t, double>> epsilon_schedule;
};

struct DiagSection {
  std::vector<double> epsilons{0.1, 0.3, 0.5};
  std::uint64_t t_max = 30;
  std::size_t pairs = 100;
  std::string base = "model";       // "model" | "flip" | "identity"
  std::string reference = "uniform";  // "uniform" | "point0" | "model" (file)
  std::string start = "point0";     // mixing-curve start: "point0" | "uniform"
  std::size_t toy_states = 2;       // state count for the toy bases
};

struct BenchSection {
  std::vector<std::size_t> solve_sizes{16, 256, 4096};
  std::size_t gibbs_steps = 200000;
  std::vector<std::size_t> particle_counts{100, 1000, 10000};
  std::size_t repeats = 5;
};

struct PathsSection {
  std::string train_data;    // default: <out_dir>/train.txt
  std::string heldout_data;  // default: <out_dir>/heldout.txt (gen only writes it when n_heldout > 0)
  std::string model_in;      // eval/diag input model
  std::string reference_in;  // optional explicit reference file
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  double epsilon = 0.5;
  std::string out_dir = "out";
  ModelSpec model;
  ReferenceSpec reference;
  TeacherSpec teacher;
  GenSection gen;
  TrainSection train;
  DiagSection diag;
  BenchSection bench;
  PathsSection paths;

  std::filesystem::path train_data_path() const;
  std::filesystem::path heldout_data_path() const;

  // Canonical JSON form; round-trips through from_json exactly.
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);

  std::string canonical_dump() const { return to_json().dump(2) + "\n"; }
  std::string hash() const;
};

// Field-by-field reference for --help output.
std::string config_field_reference();

}  // namespace doeblin::cli
