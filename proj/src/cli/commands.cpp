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

#include "doeblin/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "doeblin/errors.hpp"
#include "doeblin/learning.hpp"
#include "doeblin/serialization.hpp"
#include "doeblin/tolerances.hpp"

namespace doeblin::cli {

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

std::string tsv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& cell : cells) {
    if (!row.empty()) row += '\t';
    row += cell;
  }
  row += '\n';
  return row;
}

std::string fmt(double v) { return io::format_double(v); }

PairwiseModel build_teacher(const ExperimentConfig& cfg) {
  const StateSpace space = cfg.model.space();
  PairwiseModel model = PairwiseModel::zeros(space, cfg.model.build_edges());
  if (cfg.teacher.init == "zero") return model;
  if (cfg.teacher.init == "explicit") {
    return model.with_theta(cfg.teacher.theta);
  }
  if (cfg.teacher.init == "gaussian") {
    RngStream rng(derive_seed(cfg.seed, "teacher"));
    std::vector<double> theta(model.num_params());
    for (double& t : theta) t = cfg.teacher.sigma * rng.next_gaussian();
    return model.with_theta(theta);
  }
  throw ConfigError("teacher.init must be 'gaussian', 'zero', or 'explicit'");
}

std::shared_ptr<const ReferenceModel> resolve_reference(
    const ExperimentConfig& cfg, const StateSpace& space,
    std::span<const State> fit_rows, const char* command) {
  if (!cfg.paths.reference_in.empty()) {
    auto ref = std::make_shared<ReferenceModel>(io::read_reference(cfg.paths.reference_in));
    if (ref->space() != space) {
      throw ConfigError("reference file does not match the model's state space");
    }
    return ref;
  }
  if (cfg.reference.type == "uniform") {
    return std::make_shared<ReferenceModel>(ReferenceModel::uniform(space));
  }
  if (cfg.reference.type == "fit") {
    if (fit_rows.empty()) {
      throw ConfigError(std::string(command) +
                        ": reference.type 'fit' needs data; use 'uniform' or paths.reference_in");
    }
    return std::make_shared<ReferenceModel>(
        fit_reference(fit_rows, space, cfg.reference.alpha));
  }
  throw ConfigError("reference.type must be 'fit' or 'uniform'");
}

EpsilonSchedule schedule_of(const ExperimentConfig& cfg) {
  if (cfg.train.epsilon_schedule.empty()) return EpsilonSchedule::constant(cfg.epsilon);
  return EpsilonSchedule(cfg.train.epsilon_schedule);
}

// Dirichlet(1) rows: independent exponentials, normalized.
DenseKernel random_dense_kernel(const StateSpace& space, RngStream& rng) {
  const std::size_t n = space.require_dense("random_dense_kernel");
  std::vector<double> rows(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = -std::log(rng.next_unit_open());
      rows[i * n + j] = e;
      total += e;
    }
    for (std::size_t j = 0; j < n; ++j) rows[i * n + j] /= total;
  }
  return DenseKernel(space, std::move(rows));
}

DenseDistribution random_distribution(const StateSpace& space, RngStream& rng) {
  const std::size_t n = space.require_dense("random_distribution");
  std::vector<double> p(n);
  double total = 0.0;
  for (double& v : p) {
    v = -std::log(rng.next_unit_open());
    total += v;
  }
  for (double& v : p) v /= total;
  return DenseDistribution(space, std::move(p));
}

struct DiagChain {
  DenseKernel base;
  DenseDistribution reference;
};

DiagChain build_diag_chain(const ExperimentConfig& cfg) {
  if (cfg.diag.base == "model") {
    if (cfg.paths.model_in.empty()) {
      throw ConfigError("diag.base 'model' needs paths.model_in");
    }
    const PairwiseModel model = io::read_model(cfg.paths.model_in);
    DenseKernel base = dense_gibbs_kernel(model);
    if (cfg.diag.reference == "model") {
      if (cfg.paths.reference_in.empty()) {
        throw ConfigError("diag.reference 'model' needs paths.reference_in");
      }
      return {std::move(base), io::read_reference(cfg.paths.reference_in).densify()};
    }
    if (cfg.diag.reference == "point0") {
      return {std::move(base), DenseDistribution::point_mass(model.space(), 0)};
    }
    if (cfg.diag.reference == "uniform") {
      return {std::move(base), DenseDistribution::uniform(model.space())};
    }
    throw ConfigError("diag.reference must be 'uniform', 'point0', or 'model'");
  }

  const StateSpace toy(1, cfg.diag.toy_states);
  const std::size_t n = toy.require_dense("diag toy chain");
  DenseDistribution ref = cfg.diag.reference == "point0"
                              ? DenseDistribution::point_mass(toy, 0)
                              : DenseDistribution::uniform(toy);
  if (cfg.diag.base == "identity") {
    return {DenseKernel::identity(toy), std::move(ref)};
  }
  if (cfg.diag.base == "flip") {
    // Cyclic shift; for two states this is the classic flip kernel.
    std::vector<double> rows(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) rows[i * n + (i + 1) % n] = 1.0;
    return {DenseKernel(toy, std::move(rows)), std::move(ref)};
  }
  throw ConfigError("diag.base must be 'model', 'flip', or 'identity'");
}

}  // namespace

void cmd_gen(const ExperimentConfig& cfg) {
  const PairwiseModel teacher = build_teacher(cfg);
  const auto reference = resolve_reference(cfg, teacher.space(), {}, "gen");

  const RestartChain chain(std::make_shared<GibbsKernel>(teacher), reference,
                           cfg.epsilon);
  auto sample_rows = [&](std::size_t count, const char* tag) {
    std::vector<State> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      RngStream rng(derive_seed(cfg.seed, tag, {i}));
      rows.push_back(sample_stationary(chain, rng));
    }
    return rows;
  };

  const fs::path out(cfg.out_dir);
  io::write_dataset(cfg.train_data_path(), sample_rows(cfg.gen.n_train, "gen-train"));
  if (cfg.gen.n_heldout > 0) {
    io::write_dataset(cfg.heldout_data_path(),
                      sample_rows(cfg.gen.n_heldout, "gen-heldout"));
  }
  io::write_model(out / "teacher_model.json", teacher);
  io::write_reference(out / "teacher_reference.json", *reference);

  // The datasets are synthetic stand-ins, and say so.
  nlohmann::json meta{{"task", "synthetic-teacher-student"},
                      {"seed", cfg.seed},
                      {"epsilon", cfg.epsilon},
                      {"n_train", cfg.gen.n_train},
                      {"n_heldout", cfg.gen.n_heldout},
                      {"config_hash", cfg.hash()}};
  io::write_text_file(out / "gen_meta.json", meta.dump(2) + "\n");
  std::cout << "gen: wrote " << cfg.gen.n_train << "+" << cfg.gen.n_heldout
            << " rows under " << cfg.out_dir << "\n";
}

void cmd_train(const ExperimentConfig& cfg) {
  const StateSpace space = cfg.model.space();
  const std::vector<State> train_rows = io::read_dataset(cfg.train_data_path(), space);
  if (train_rows.empty()) throw ConfigError("training dataset is empty");
  std::vector<State> heldout_rows;
  if (fs::exists(cfg.heldout_data_path())) {
    heldout_rows = io::read_dataset(cfg.heldout_data_path(), space);
  }

  const PairwiseModel initial = PairwiseModel::zeros(space, cfg.model.build_edges());
  const auto reference = resolve_reference(cfg, space, train_rows, "train");

  TrainConfig train_cfg;
  train_cfg.epsilon = schedule_of(cfg);
  train_cfg.particles = cfg.train.particles;
  train_cfg.eta0 = cfg.train.eta0;
  train_cfg.tau = cfg.train.tau;
  train_cfg.iterations = cfg.train.iterations;
  train_cfg.minibatch = cfg.train.minibatch;
  train_cfg.seed = cfg.seed;
  train_cfg.eval_every = cfg.train.eval_every;

  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  std::ofstream log(out / "train_log.tsv", std::ios::binary | std::ios::trunc);
  if (!log) throw ConfigError("cannot write training log under " + cfg.out_dir);
  log << tsv_row({"iteration", "epsilon", "train_loglik_exact", "heldout_loglik_exact",
                  "mean_ess", "max_weight", "wallclock_ms"});
  log.flush();

  auto on_record = [&](const TrainLogRecord& rec) {
    log << tsv_row({std::to_string(rec.iteration), fmt(rec.epsilon),
                    rec.train_loglik_exact ? fmt(*rec.train_loglik_exact) : "na",
                    rec.heldout_loglik_exact ? fmt(*rec.heldout_loglik_exact) : "na",
                    fmt(rec.mean_ess), fmt(rec.max_weight),
                    std::to_string(rec.wallclock_ms)});
    log.flush();
  };

  const TrainResult result = sgd_train(train_rows, initial, *reference, train_cfg,
                                       heldout_rows, on_record);
  io::write_model(out / "model.json", result.model);
  io::write_reference(out / "reference.json", *reference);
  std::cout << "train: " << cfg.train.iterations << " iterations, artifacts under "
            << cfg.out_dir << "\n";
}

void cmd_eval(const ExperimentConfig& cfg) {
  if (cfg.paths.model_in.empty()) throw ConfigError("eval needs paths.model_in");
  const PairwiseModel model = io::read_model(cfg.paths.model_in);
  model.space().require_dense("eval");  // exact-only: refuse anything bigger

  const std::vector<State> rows = io::read_dataset(cfg.train_data_path(), model.space());
  if (rows.empty()) throw ConfigError("eval dataset is empty");
  const auto reference = resolve_reference(cfg, model.space(), rows, "eval");

  const double mean_pi_eps = mean_loglik_exact(model, *reference, cfg.epsilon, rows);
  double mean_ref = 0.0;
  double mean_model = 0.0;
  const DenseDistribution exact = exact_distribution(model);
  for (const State& y : rows) {
    mean_ref += reference->log_prob(y);
    mean_model += std::log(exact[static_cast<std::size_t>(model.space().flat_index(y))]);
  }
  mean_ref /= static_cast<double>(rows.size());
  mean_model /= static_cast<double>(rows.size());

  std::string table =
      tsv_row({"n_rows", "epsilon", "mean_loglik_pi_eps", "mean_loglik_reference",
               "mean_loglik_model", "config_hash"}) +
      tsv_row({std::to_string(rows.size()), fmt(cfg.epsilon), fmt(mean_pi_eps),
               fmt(mean_ref), fmt(mean_model), cfg.hash()});
  io::write_text_file(fs::path(cfg.out_dir) / "metrics.tsv", table);
  std::cout << "eval: mean log pi_eps = " << fmt(mean_pi_eps) << " over "
            << rows.size() << " rows\n";
}

void cmd_diag(const ExperimentConfig& cfg) {
  const DiagChain chain = build_diag_chain(cfg);
  const fs::path out(cfg.out_dir);

  // (a) mixing curves, one block per epsilon, with the geometric envelope.
  {
    const DenseDistribution start =
        cfg.diag.start == "uniform"
            ? DenseDistribution::uniform(chain.base.space())
            : DenseDistribution::point_mass(chain.base.space(), 0);
    std::string table = tsv_row({"epsilon", "t", "tv_to_pi_eps", "envelope"});
    for (double eps : cfg.diag.epsilons) {
      const auto curve = mixing_curve(chain.base, chain.reference, eps, start, cfg.diag.t_max);
      const double tv0 = curve.front().second;
      for (const auto& [t, tv] : curve) {
        table += tsv_row({fmt(eps), std::to_string(t), fmt(tv),
                          fmt(tv0 * std::pow(1.0 - eps, static_cast<double>(t)))});
      }
    }
    io::write_text_file(out / "mixing_curve.tsv", table);
  }

  // (b) stationarity gap vs the base chain, with the dominating proxy.
  {
    std::string table = tsv_row({"epsilon", "tv_gap", "bound_proxy", "status"});
    try {
      const auto rows = approximation_gap(chain.base, chain.reference, cfg.diag.epsilons);
      for (const auto& row : rows) {
        table += tsv_row({fmt(row.epsilon), fmt(row.tv_gap), fmt(row.bound_proxy), "ok"});
      }
    } catch (const NonErgodicError& e) {
      for (double eps : cfg.diag.epsilons) {
        table += tsv_row({fmt(eps), "na", "na", "non-ergodic"});
      }
      std::cout << "diag: base chain is non-ergodic (" << e.what() << ")\n";
    }
    io::write_text_file(out / "approximation_gap.tsv", table);
  }

  // (c) contraction audit over random distribution pairs.
  {
    std::string table = tsv_row({"epsilon", "pair", "lhs", "rhs", "violated"});
    std::size_t violations = 0;
    for (std::size_t ei = 0; ei < cfg.diag.epsilons.size(); ++ei) {
      const double eps = cfg.diag.epsilons[ei];
      for (std::size_t p = 0; p < cfg.diag.pairs; ++p) {
        RngStream rng(derive_seed(cfg.seed, "diag-pair", {ei, p}));
        const DenseDistribution mu = random_distribution(chain.base.space(), rng);
        const DenseDistribution nu = random_distribution(chain.base.space(), rng);
        const auto [lhs, rhs] = contraction_check(chain.base, chain.reference, eps, mu, nu);
        const bool violated = lhs > rhs + tol::kMassTol;
        violations += violated;
        table += tsv_row({fmt(eps), std::to_string(p), fmt(lhs), fmt(rhs),
                          violated ? "1" : "0"});
      }
    }
    io::write_text_file(out / "contraction_audit.tsv", table);
    std::cout << "diag: contraction audit " << violations << " violations / "
              << cfg.diag.epsilons.size() * cfg.diag.pairs << " checks\n";
  }
}

void cmd_bench(const ExperimentConfig& cfg) {
  std::string table = tsv_row({"metric", "param", "value"});

  // Gibbs stepping throughput on a seeded 10-variable chain model.
  {
    const StateSpace space(10, 2);
    PairwiseModel model = PairwiseModel::zeros(space, ModelSpec{10, 2, "chain"}.build_edges());
    RngStream theta_rng(derive_seed(cfg.seed, "bench-theta"));
    std::vector<double> theta(model.num_params());
    for (double& t : theta) t = theta_rng.next_gaussian();
    model = model.with_theta(theta);

    RngStream rng(derive_seed(cfg.seed, "bench-gibbs"));
    State x(space.num_variables(), 0);
    const auto start = clock_type::now();
    for (std::size_t s = 0; s < cfg.bench.gibbs_steps; ++s) {
      x = gibbs_step(model, x, rng).next;
    }
    const double ms = elapsed_ms(start);
    table += tsv_row({"gibbs_steps_per_sec", std::to_string(cfg.bench.gibbs_steps),
                      fmt(1000.0 * static_cast<double>(cfg.bench.gibbs_steps) / ms)});

    // Gradient estimation latency across particle counts, same model.
    for (std::size_t particles : cfg.bench.particle_counts) {
      std::vector<double> times;
      for (std::size_t r = 0; r < cfg.bench.repeats; ++r) {
        const auto t0 = clock_type::now();
        (void)grad_loglik_estimate(model, ReferenceModel::uniform(space), cfg.epsilon, x,
                                   particles, derive_seed(cfg.seed, "bench-grad", {r}));
        times.push_back(elapsed_ms(t0));
      }
      std::sort(times.begin(), times.end());
      table += tsv_row({"grad_estimate_ms_median", std::to_string(particles),
                        fmt(times[times.size() / 2])});
    }
  }

  // Stationary solve latency across N.
  for (std::size_t n : cfg.bench.solve_sizes) {
    const StateSpace space(1, n);
    RngStream rng(derive_seed(cfg.seed, "bench-solve", {n}));
    const DenseKernel kernel = random_dense_kernel(space, rng);
    const DenseDistribution reference = DenseDistribution::uniform(space);
    std::vector<double> times;
    for (std::size_t r = 0; r < cfg.bench.repeats; ++r) {
      const auto t0 = clock_type::now();
      (void)stationary_dense(kernel, reference, cfg.epsilon);
      times.push_back(elapsed_ms(t0));
    }
    std::sort(times.begin(), times.end());
    table += tsv_row({"stationary_solve_ms_median", std::to_string(n),
                      fmt(times[times.size() / 2])});
  }

  table += tsv_row({"config_hash", "-", cfg.hash()});
  io::write_text_file(fs::path(cfg.out_dir) / "bench.tsv", table);
  std::cout << "bench: report under " << cfg.out_dir << "\n";
}

}  // namespace doeblin::cli
