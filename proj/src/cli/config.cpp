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

#include "doeblin/cli/config.hpp"

#include <set>

#include "doeblin/errors.hpp"
#include "doeblin/serialization.hpp"

namespace doeblin::cli {

using nlohmann::json;

std::vector<Edge> ModelSpec::build_edges() const {
  if (topology == "chain") {
    if (num_variables == 0) throw ConfigError("model.V must be positive for topology 'chain'");
    std::vector<Edge> result;
    for (std::size_t v = 0; v + 1 < num_variables; ++v) result.push_back({v, v + 1});
    return result;
  }
  if (topology == "grid") {
    if (grid_rows == 0 || grid_cols == 0) {
      throw ConfigError("model.grid_rows and model.grid_cols must be positive for topology 'grid'");
    }
    std::vector<Edge> result;
    auto id = [&](std::size_t r, std::size_t c) { return r * grid_cols + c; };
    for (std::size_t r = 0; r < grid_rows; ++r) {
      for (std::size_t c = 0; c < grid_cols; ++c) {
        if (c + 1 < grid_cols) result.push_back({id(r, c), id(r, c + 1)});
        if (r + 1 < grid_rows) result.push_back({id(r, c), id(r + 1, c)});
      }
    }
    return result;
  }
  if (topology == "edges") return edges;
  throw ConfigError("model.topology must be 'chain', 'grid', or 'edges', got '" + topology + "'");
}

StateSpace ModelSpec::space() const {
  std::size_t v = num_variables;
  if (topology == "grid") v = grid_rows * grid_cols;
  if (v == 0) throw ConfigError("model spec does not determine a positive variable count");
  return StateSpace(v, labels);
}

std::filesystem::path ExperimentConfig::train_data_path() const {
  return paths.train_data.empty() ? std::filesystem::path(out_dir) / "train.txt"
                                  : std::filesystem::path(paths.train_data);
}

std::filesystem::path ExperimentConfig::heldout_data_path() const {
  return paths.heldout_data.empty() ? std::filesystem::path(out_dir) / "heldout.txt"
                                    : std::filesystem::path(paths.heldout_data);
}

json ExperimentConfig::to_json() const {
  json edges = json::array();
  for (const Edge& e : model.edges) edges.push_back({e.u, e.v});
  json schedule = json::array();
  for (const auto& [iter, eps] : train.epsilon_schedule) schedule.push_back({iter, eps});
  return json{
      {"seed", seed},
      {"epsilon", epsilon},
      {"out_dir", out_dir},
      {"model",
       {{"V", model.num_variables},
        {"K", model.labels},
        {"topology", model.topology},
        {"grid_rows", model.grid_rows},
        {"grid_cols", model.grid_cols},
        {"edges", edges}}},
      {"reference", {{"type", reference.type}, {"alpha", reference.alpha}}},
      {"teacher",
       {{"init", teacher.init}, {"sigma", teacher.sigma}, {"theta", teacher.theta}}},
      {"gen", {{"n_train", gen.n_train}, {"n_heldout", gen.n_heldout}}},
      {"train",
       {{"iterations", train.iterations},
        {"minibatch", train.minibatch},
        {"particles", train.particles},
        {"eta0", train.eta0},
        {"tau", train.tau},
        {"eval_every", train.eval_every},
        {"epsilon_schedule", schedule}}},
      {"diag",
       {{"epsilons", diag.epsilons},
        {"t_max", diag.t_max},
        {"pairs", diag.pairs},
        {"base", diag.base},
        {"reference", diag.reference},
        {"start", diag.start},
        {"toy_states", diag.toy_states}}},
      {"bench",
       {{"solve_sizes", bench.solve_sizes},
        {"gibbs_steps", bench.gibbs_steps},
        {"particle_counts", bench.particle_counts},
        {"repeats", bench.repeats}}},
      {"paths",
       {{"train_data", paths.train_data},
        {"heldout_data", paths.heldout_data},
        {"model_in", paths.model_in},
        {"reference_in", paths.reference_in}}}};
}

namespace {

// Pulls j[key] if present, enforcing that no unknown keys hide typos.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {}

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(name_ + "." + key + ": " + e.what());
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) {
        throw ConfigError("unknown config field '" + name_ + "." + key + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

json subsection(Section& parent, const json& j, const char* key) {
  json sub = json::object();
  parent.get(key, sub);
  if (!sub.is_object()) throw ConfigError(std::string("config field '") + key + "' must be an object");
  return sub;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  ExperimentConfig cfg;
  Section root(j, "config");
  root.get("seed", cfg.seed);
  root.get("epsilon", cfg.epsilon);
  root.get("out_dir", cfg.out_dir);

  {
    const json sub = subsection(root, j, "model");
    Section s(sub, "model");
    s.get("V", cfg.model.num_variables);
    s.get("K", cfg.model.labels);
    s.get("topology", cfg.model.topology);
    s.get("grid_rows", cfg.model.grid_rows);
    s.get("grid_cols", cfg.model.grid_cols);
    std::vector<std::vector<std::size_t>> raw_edges;
    s.get("edges", raw_edges);
    for (const auto& pair : raw_edges) {
      if (pair.size() != 2) throw ConfigError("model.edges entries must be [u, v] pairs");
      cfg.model.edges.push_back({pair[0], pair[1]});
    }
    s.finish();
  }
  {
    const json sub = subsection(root, j, "reference");
    Section s(sub, "reference");
    s.get("type", cfg.reference.type);
    s.get("alpha", cfg.reference.alpha);
    s.finish();
  }
  {
    const json sub = subsection(root, j, "teacher");
    Section s(sub, "teacher");
    s.get("init", cfg.teacher.init);
    s.get("sigma", cfg.teacher.sigma);
    s.get("theta", cfg.teacher.theta);
    s.finish();
  }
  {
    const json sub = subsection(root, j, "gen");
    Section s(sub, "gen");
    s.get("n_train", cfg.gen.n_train);
    s.get("n_heldout", cfg.gen.n_heldout);
    s.finish();
  }
  {
    const json sub = subsection(root, j, "train");
    Section s(sub, "train");
    s.get("iterations", cfg.train.iterations);
    s.get("minibatch", cfg.train.minibatch);
    s.get("particles", cfg.train.particles);
    s.get("eta0", cfg.train.eta0);
    s.get("tau", cfg.train.tau);
    s.get("eval_every", cfg.train.eval_every);
    std::vector<std::pair<std::uint64_t, double>> schedule;
    s.get("epsilon_schedule", schedule);
    cfg.train.epsilon_schedule = std::move(schedule);
    s.finish();
  }
  {
    const json sub = subsection(root, j, "diag");
    Section s(sub, "diag");
    s.get("epsilons", cfg.diag.epsilons);
    s.get("t_max", cfg.diag.t_max);
    s.get("pairs", cfg.diag.pairs);
    s.get("base", cfg.diag.base);
    s.get("reference", cfg.diag.reference);
    s.get("start", cfg.diag.start);
    s.get("toy_states", cfg.diag.toy_states);
    s.finish();
  }
  {
    const json sub = subsection(root, j, "bench");
    Section s(sub, "bench");
    s.get("solve_sizes", cfg.bench.solve_sizes);
    s.get("gibbs_steps", cfg.bench.gibbs_steps);
    s.get("particle_counts", cfg.bench.particle_counts);
    s.get("repeats", cfg.bench.repeats);
    s.finish();
  }
  {
    const json sub = subsection(root, j, "paths");
    Section s(sub, "paths");
    s.get("train_data", cfg.paths.train_data);
    s.get("heldout_data", cfg.paths.heldout_data);
    s.get("model_in", cfg.paths.model_in);
    s.get("reference_in", cfg.paths.reference_in);
    s.finish();
  }
  root.finish();

  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1]");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(io::read_text_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

std::string ExperimentConfig::hash() const { return io::fnv1a_hex(canonical_dump()); }

std::string config_field_reference() {
  return
      "Config file fields (JSON; every field optional unless a command needs it):\n"
      "  seed                 uint64 root seed; all RNG streams derive from it\n"
      "  epsilon              restart probability in (0,1]\n"
      "  out_dir              directory for generated artifacts\n"
      "  model.V              number of variables (chain/edges topologies)\n"
      "  model.K              labels per variable\n"
      "  model.topology       'chain' | 'grid' | 'edges'\n"
      "  model.grid_rows      grid height (topology 'grid')\n"
      "  model.grid_cols      grid width (topology 'grid')\n"
      "  model.edges          explicit [u,v] pairs (topology 'edges')\n"
      "  reference.type       'fit' (smoothed data marginals) | 'uniform'\n"
      "  reference.alpha      additive smoothing for 'fit'\n"
      "  teacher.init         'gaussian' | 'zero' | 'explicit' (gen only)\n"
      "  teacher.sigma        stddev for gaussian teacher parameters\n"
      "  teacher.theta        explicit teacher parameter vector\n"
      "  gen.n_train          rows written to the training dataset\n"
      "  gen.n_heldout        rows written to the held-out dataset (0 = none)\n"
      "  train.iterations     SGD iterations\n"
      "  train.minibatch      rows per iteration\n"
      "  train.particles      importance-sampling particles per gradient\n"
      "  train.eta0           initial step size\n"
      "  train.tau            step-size decay scale: eta0 / (1 + iter/tau)\n"
      "  train.eval_every     iterations between exact evaluations\n"
      "  train.epsilon_schedule  [[iteration, epsilon], ...] piecewise-constant\n"
      "  diag.epsilons        epsilon values for the diagnostics tables\n"
      "  diag.t_max           mixing-curve horizon\n"
      "  diag.pairs           random pairs in the contraction audit\n"
      "  diag.base            'model' (from paths.model_in) | 'flip' | 'identity'\n"
      "  diag.reference       'uniform' | 'point0' | 'model' (paths.reference_in)\n"
      "  diag.start           mixing-curve start: 'point0' | 'uniform'\n"
      "  diag.toy_states      state count for the toy bases\n"
      "  bench.solve_sizes    N values for the stationary-solve benchmark\n"
      "  bench.gibbs_steps    steps in the Gibbs throughput benchmark\n"
      "  bench.particle_counts  M values for the gradient benchmark\n"
      "  bench.repeats        repetitions per timing (median reported)\n"
      "  paths.train_data     training dataset (default <out_dir>/train.txt)\n"
      "  paths.heldout_data   held-out dataset (default <out_dir>/heldout.txt)\n"
      "  paths.model_in       input model for eval/diag\n"
      "  paths.reference_in   input reference for eval/diag\n";
}

}  // namespace doeblin::cli
