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
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "doeblin/pairwise_model.hpp"
#include "doeblin/reference_model.hpp"
#include "doeblin/restart_chain.hpp"

// Likelihood of data under the restart chain's stationary law pi_eps and
// its maximization. Exact quantities go through the dense oracles; the
// stochastic gradient uses the Fisher identity
//
//   grad log pi_eps(y) = E[ sum_t grad log A(x_{t-1} -> x_t) | x_T = y ],
//
// with the posterior expectation estimated by backward Gibbs runs from y
// plus self-normalized importance weights pi_ref(x_0) / p_model(x_0)
// (detailed balance turns a backward trajectory into a forward one at the
// cost of exactly that ratio; the remaining y-only constant cancels in
// self-normalization). The reference is fixed, so its gradient term is zero.
namespace doeblin {

// One sampled trajectory ending at the anchor y, in forward orientation:
// states[0..T], step t resampled coordinate coords[t-1] to labels[t-1].
struct RestartPath {
  std::uint64_t restart_time = 0;
  std::vector<State> states;
  std::vector<std::size_t> coords;
  std::vector<std::int32_t> labels;
  double log_weight = 0.0;
};

struct GradientEstimate {
  std::vector<double> grad;
  std::size_t particles = 0;
  double ess = 0.0;         // (sum w)^2 / sum w^2, in [1, particles]
  double max_weight = 0.0;  // largest self-normalized weight
  bool degenerate = false;  // ess < 0.01 * particles
  std::vector<double> std_error;  // delta-method per-coordinate standard errors
};

// Piecewise-constant schedule over iterations; an empty knot list is
// invalid. Knots are (first_iteration, value), sorted ascending.
class EpsilonSchedule {
 public:
  static EpsilonSchedule constant(double epsilon);
  explicit EpsilonSchedule(std::vector<std::pair<std::uint64_t, double>> knots);
  double at(std::uint64_t iteration) const;
  const std::vector<std::pair<std::uint64_t, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<std::uint64_t, double>> knots_;
};

struct TrainConfig {
  EpsilonSchedule epsilon = EpsilonSchedule::constant(0.5);
  std::size_t particles = 100;
  double eta0 = 0.5;
  double tau = 200.0;  // step size eta0 / (1 + iter / tau)
  std::uint64_t iterations = 0;
  std::size_t minibatch = 1;
  std::uint64_t seed = 0;
  std::uint64_t eval_every = 50;
};

struct TrainLogRecord {
  std::uint64_t iteration = 0;
  double epsilon = 0.0;
  std::optional<double> train_loglik_exact;
  std::optional<double> heldout_loglik_exact;
  double mean_ess = 0.0;
  double max_weight = 0.0;
  std::int64_t wallclock_ms = 0;  // the one field excluded from determinism checks
};

// log pi_eps(y); pi_eps(y) >= eps * pi_ref(y) > 0, so the value is finite.
// Throws SizeCapError beyond the dense cap.
double loglik_exact(const PairwiseModel& model, const ReferenceDistribution& reference,
                    double epsilon, const State& y);

// Mean log pi_eps over a dataset with a single stationary solve.
double mean_loglik_exact(const PairwiseModel& model,
                         const ReferenceDistribution& reference, double epsilon,
                         std::span<const State> rows);

// Central differences of loglik_exact per parameter at tol::kFdStep.
std::vector<double> grad_loglik_fd(const PairwiseModel& model,
                                   const ReferenceDistribution& reference,
                                   double epsilon, const State& y);

// Backward Gibbs run of length T ~ Geom(epsilon) anchored at x_T = y.
RestartPath sample_posterior_path(const PairwiseModel& model,
                                  const ReferenceDistribution& reference, double epsilon,
                                  const State& y, RngStream& rng);

// Sum of per-step gradients along a path, as a dense parameter vector.
std::vector<double> path_gradient(const PairwiseModel& model, const RestartPath& path);

// Self-normalized importance-sampling estimate of grad log pi_eps(y) from
// `particles` posterior paths. Particle m draws its RngStream from
// derive_seed(seed, "particle", {m}) and the reduction is order-fixed, so
// the result is identical for any worker count.
GradientEstimate grad_loglik_estimate(const PairwiseModel& model,
                                      const ReferenceDistribution& reference,
                                      double epsilon, const State& y,
                                      std::size_t particles, std::uint64_t seed);

// Contrastive-divergence baseline: phi(y) - phi(x_k) with x_k reached by
// k_steps Gibbs updates from y under the current model, no restarts.
std::vector<double> cd_gradient(const PairwiseModel& model, const State& y,
                                std::uint64_t k_steps, RngStream& rng);

struct TrainResult {
  PairwiseModel model;
  std::vector<TrainLogRecord> log;
};

// Minibatch stochastic gradient ascent on the mean log pi_eps of `dataset`.
// Evaluation records are emitted at iteration 0, every eval_every
// iterations, and at the end; `on_record`, when given, sees each record as
// it is produced (so a divergence abort still leaves a usable partial log).
// Throws DivergenceError when any |theta| crosses tol::kThetaLimit.
TrainResult sgd_train(std::span<const State> dataset, const PairwiseModel& initial,
                      const ReferenceDistribution& reference, const TrainConfig& config,
                      std::span<const State> heldout = {},
                      const std::function<void(const TrainLogRecord&)>& on_record = {});

}  // namespace doeblin
