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

#include "doeblin/learning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "doeblin/errors.hpp"
#include "doeblin/parallel.hpp"
#include "doeblin/tolerances.hpp"
#include "doeblin/vec/kernels.hpp"

namespace doeblin {

EpsilonSchedule EpsilonSchedule::constant(double epsilon) {
  return EpsilonSchedule({{0, epsilon}});
}

EpsilonSchedule::EpsilonSchedule(std::vector<std::pair<std::uint64_t, double>> knots)
    : knots_(std::move(knots)) {
  if (knots_.empty()) throw std::invalid_argument("EpsilonSchedule: no knots");
  if (knots_.front().first != 0) {
    throw std::invalid_argument("EpsilonSchedule: first knot must start at iteration 0");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i].second > 0.0 && knots_[i].second <= 1.0)) {
      throw std::invalid_argument("EpsilonSchedule: epsilon must lie in (0, 1]");
    }
    if (i > 0 && knots_[i].first <= knots_[i - 1].first) {
      throw std::invalid_argument("EpsilonSchedule: knots must be strictly increasing");
    }
  }
}

double EpsilonSchedule::at(std::uint64_t iteration) const {
  double value = knots_.front().second;
  for (const auto& [start, eps] : knots_) {
    if (start > iteration) break;
    value = eps;
  }
  return value;
}

double loglik_exact(const PairwiseModel& model, const ReferenceDistribution& reference,
                    double epsilon, const State& y) {
  const State rows[] = {y};
  return mean_loglik_exact(model, reference, epsilon, rows);
}

double mean_loglik_exact(const PairwiseModel& model,
                         const ReferenceDistribution& reference, double epsilon,
                         std::span<const State> rows) {
  if (rows.empty()) throw std::invalid_argument("mean_loglik_exact: no rows");
  const DenseDistribution pi_eps =
      stationary_dense(dense_gibbs_kernel(model), reference.densify(), epsilon);
  double total = 0.0;
  for (const State& y : rows) {
    total += std::log(pi_eps[static_cast<std::size_t>(model.space().flat_index(y))]);
  }
  return total / static_cast<double>(rows.size());
}

std::vector<double> grad_loglik_fd(const PairwiseModel& model,
                                   const ReferenceDistribution& reference,
                                   double epsilon, const State& y) {
  std::vector<double> grad(model.num_params());
  std::vector<double> theta = model.theta();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double saved = theta[i];
    theta[i] = saved + tol::kFdStep;
    const double up = loglik_exact(model.with_theta(theta), reference, epsilon, y);
    theta[i] = saved - tol::kFdStep;
    const double down = loglik_exact(model.with_theta(theta), reference, epsilon, y);
    theta[i] = saved;
    grad[i] = (up - down) / (2.0 * tol::kFdStep);
  }
  return grad;
}

RestartPath sample_posterior_path(const PairwiseModel& model,
                                  const ReferenceDistribution& reference, double epsilon,
                                  const State& y, RngStream& rng) {
  if (!model.space().contains(y)) {
    throw std::invalid_argument("sample_posterior_path: anchor out of range");
  }
  const std::uint64_t steps = sample_restart_time(epsilon, rng);
  RestartPath path;
  path.restart_time = steps;
  path.states.resize(static_cast<std::size_t>(steps) + 1);
  path.coords.resize(static_cast<std::size_t>(steps));
  path.labels.resize(static_cast<std::size_t>(steps));

  // Walk backward from the anchor with the same random-scan kernel;
  // reversibility makes this a correctly weighted forward path read in
  // reverse. Forward step t resamples the coordinate chosen at backward
  // step t, landing on the label the later state already carries.
  State current = y;
  path.states[static_cast<std::size_t>(steps)] = current;
  for (std::uint64_t t = steps; t > 0; --t) {
    const std::size_t v = rng.next_index(model.space().num_variables());
    const auto probs = conditional(model, current, v);
    path.coords[static_cast<std::size_t>(t - 1)] = v;
    path.labels[static_cast<std::size_t>(t - 1)] = current[v];
    current[v] = static_cast<std::int32_t>(rng.next_categorical(probs));
    path.states[static_cast<std::size_t>(t - 1)] = current;
  }
  path.log_weight = reference.log_prob(current) - unnorm_logp(model, current);
  return path;
}

std::vector<double> path_gradient(const PairwiseModel& model, const RestartPath& path) {
  std::vector<double> grad(model.num_params(), 0.0);
  for (std::size_t t = 0; t < path.coords.size(); ++t) {
    const auto local =
        grad_step_logprob(model, path.states[t], path.coords[t], path.labels[t]);
    for (const auto& [idx, g] : local) grad[idx] += g;
  }
  return grad;
}

GradientEstimate grad_loglik_estimate(const PairwiseModel& model,
                                      const ReferenceDistribution& reference,
                                      double epsilon, const State& y,
                                      std::size_t particles, std::uint64_t seed) {
  if (particles == 0) {
    throw std::invalid_argument("grad_loglik_estimate: particles must be positive");
  }
  const std::size_t num_params = model.num_params();

  // Per-particle slots filled in parallel; every reduction below walks them
  // in particle order, so the estimate is invariant to the worker count.
  std::vector<double> log_weights(particles);
  std::vector<std::vector<double>> grads(particles);
  parallel_chunks(particles, 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      RngStream rng(derive_seed(seed, "particle", {m}));
      const RestartPath path = sample_posterior_path(model, reference, epsilon, y, rng);
      log_weights[m] = path.log_weight;
      grads[m] = path_gradient(model, path);
    }
  });

  const double max_lw = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> weights(particles);
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  for (std::size_t m = 0; m < particles; ++m) {
    weights[m] = std::exp(log_weights[m] - max_lw);
    sum_w += weights[m];
    sum_w2 += weights[m] * weights[m];
  }

  GradientEstimate est;
  est.particles = particles;
  est.ess = sum_w * sum_w / sum_w2;
  est.grad.assign(num_params, 0.0);
  double max_norm_w = 0.0;
  for (std::size_t m = 0; m < particles; ++m) {
    weights[m] /= sum_w;
    max_norm_w = std::max(max_norm_w, weights[m]);
    vec::axpy(weights[m], grads[m].data(), est.grad.data(), num_params);
  }
  est.max_weight = max_norm_w;
  est.degenerate = est.ess < 0.01 * static_cast<double>(particles);

  est.std_error.assign(num_params, 0.0);
  for (std::size_t m = 0; m < particles; ++m) {
    const double w2 = weights[m] * weights[m];
    for (std::size_t j = 0; j < num_params; ++j) {
      const double d = grads[m][j] - est.grad[j];
      est.std_error[j] += w2 * d * d;
    }
  }
  for (double& se : est.std_error) se = std::sqrt(se);
  return est;
}

std::vector<double> cd_gradient(const PairwiseModel& model, const State& y,
                                std::uint64_t k_steps, RngStream& rng) {
  if (k_steps == 0) throw std::invalid_argument("cd_gradient: k_steps must be positive");
  State x = y;
  for (std::uint64_t t = 0; t < k_steps; ++t) {
    x = gibbs_step(model, x, rng).next;
  }
  std::vector<double> grad = sufficient_statistics(model, y);
  const std::vector<double> negative = sufficient_statistics(model, x);
  vec::axpy(-1.0, negative.data(), grad.data(), grad.size());
  return grad;
}

namespace {

struct EvalAggregates {
  double ess_sum = 0.0;
  double max_weight = 0.0;
  std::size_t count = 0;

  void add(const GradientEstimate& est) {
    ess_sum += est.ess;
    max_weight = std::max(max_weight, est.max_weight);
    ++count;
  }
  void reset() { *this = EvalAggregates{}; }
};

}  // namespace

TrainResult sgd_train(std::span<const State> dataset, const PairwiseModel& initial,
                      const ReferenceDistribution& reference, const TrainConfig& config,
                      std::span<const State> heldout,
                      const std::function<void(const TrainLogRecord&)>& on_record) {
  if (dataset.empty()) throw std::invalid_argument("sgd_train: empty dataset");
  if (config.minibatch == 0) throw std::invalid_argument("sgd_train: minibatch must be positive");
  if (config.particles == 0) throw std::invalid_argument("sgd_train: particles must be positive");
  if (!(config.eta0 >= 0.0) || !(config.tau > 0.0)) {
    throw std::invalid_argument("sgd_train: bad step-size schedule");
  }

  const auto start_time = std::chrono::steady_clock::now();
  const bool can_eval_exact = initial.space().fits_dense();

  TrainResult result{initial, {}};
  EvalAggregates window;

  auto emit = [&](std::uint64_t iteration, double epsilon) {
    TrainLogRecord rec;
    rec.iteration = iteration;
    rec.epsilon = epsilon;
    if (can_eval_exact) {
      rec.train_loglik_exact = mean_loglik_exact(result.model, reference, epsilon, dataset);
      if (!heldout.empty()) {
        rec.heldout_loglik_exact =
            mean_loglik_exact(result.model, reference, epsilon, heldout);
      }
    }
    rec.mean_ess = window.count == 0 ? 0.0 : window.ess_sum / static_cast<double>(window.count);
    rec.max_weight = window.max_weight;
    rec.wallclock_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start_time)
                           .count();
    window.reset();
    result.log.push_back(rec);
    if (on_record) on_record(rec);
  };

  emit(0, config.epsilon.at(0));

  std::vector<double> theta = result.model.theta();
  std::vector<double> grad(theta.size());
  for (std::uint64_t iter = 0; iter < config.iterations; ++iter) {
    const double epsilon = config.epsilon.at(iter);
    RngStream batch_rng(derive_seed(config.seed, "minibatch", {iter}));

    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t slot = 0; slot < config.minibatch; ++slot) {
      const std::size_t row = batch_rng.next_index(dataset.size());
      const GradientEstimate est =
          grad_loglik_estimate(result.model, reference, epsilon, dataset[row],
                               config.particles, derive_seed(config.seed, "grad", {iter, slot}));
      window.add(est);
      vec::axpy(1.0 / static_cast<double>(config.minibatch), est.grad.data(),
                grad.data(), grad.size());
    }

    const double eta = config.eta0 / (1.0 + static_cast<double>(iter) / config.tau);
    vec::axpy(eta, grad.data(), theta.data(), theta.size());
    for (double t : theta) {
      if (!(std::fabs(t) <= tol::kThetaLimit)) {
        throw DivergenceError("sgd_train: |theta| exceeded " +
                              std::to_string(tol::kThetaLimit) + " at iteration " +
                              std::to_string(iter));
      }
    }
    result.model = result.model.with_theta(theta);

    const std::uint64_t done = iter + 1;
    if (done == config.iterations ||
        (config.eval_every > 0 && done % config.eval_every == 0)) {
      emit(done, epsilon);
    }
  }
  return result;
}

}  // namespace doeblin
