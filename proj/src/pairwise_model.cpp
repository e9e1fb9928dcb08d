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

#include "doeblin/pairwise_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "doeblin/errors.hpp"
#include "doeblin/tolerances.hpp"
#include "doeblin/vec/kernels.hpp"

namespace doeblin {

namespace {

std::vector<Edge> canonicalize_edges(const StateSpace& space, std::vector<Edge> edges) {
  const std::size_t num_vars = space.num_variables();
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("PairwiseModel: self-loop edge");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= num_vars) throw std::invalid_argument("PairwiseModel: edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("PairwiseModel: duplicate edge");
  }
  return edges;
}

void check_state(const PairwiseModel& model, const State& x, const char* what) {
  if (!model.space().contains(x)) {
    throw std::invalid_argument(std::string(what) + ": state out of range");
  }
}

}  // namespace

PairwiseModel::PairwiseModel(StateSpace space, std::vector<Edge> edges,
                             std::vector<double> theta)
    : space_(space),
      edges_(canonicalize_edges(space, std::move(edges))),
      theta_(std::move(theta)) {
  const std::size_t num_vars = space_.num_variables();
  const std::size_t labels = space_.labels_per_variable();
  const std::size_t expected = num_vars * labels + edges_.size() * labels * labels;
  if (theta_.size() != expected) {
    throw std::invalid_argument("PairwiseModel: theta length " +
                                std::to_string(theta_.size()) + ", expected " +
                                std::to_string(expected));
  }
  adjacency_.resize(num_vars);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adjacency_[edges_[e].u].push_back({e, edges_[e].v, true});
    adjacency_[edges_[e].v].push_back({e, edges_[e].u, false});
  }
}

PairwiseModel PairwiseModel::zeros(StateSpace space, std::vector<Edge> edges) {
  auto canonical = canonicalize_edges(space, std::move(edges));
  const std::size_t labels = space.labels_per_variable();
  const std::size_t count =
      space.num_variables() * labels + canonical.size() * labels * labels;
  return PairwiseModel(space, std::move(canonical), std::vector<double>(count, 0.0));
}

PairwiseModel PairwiseModel::with_theta(std::vector<double> theta) const {
  return PairwiseModel(space_, edges_, std::move(theta));
}

double unnorm_logp(const PairwiseModel& model, const State& x) {
  check_state(model, x, "unnorm_logp");
  double total = 0.0;
  for (std::size_t v = 0; v < model.space().num_variables(); ++v) {
    total += model.node_weight(v, x[v]);
  }
  const auto& edges = model.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    total += model.edge_weight(e, x[edges[e].u], x[edges[e].v]);
  }
  return total;
}

DenseDistribution exact_distribution(const PairwiseModel& model) {
  const std::size_t n = model.space().require_dense("exact_distribution");
  std::vector<double> logw(n);
  double max_logw = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    logw[i] = unnorm_logp(model, model.space().state_of(i));
    max_logw = std::max(max_logw, logw[i]);
  }
  std::vector<double> probs(n);
  for (std::size_t i = 0; i < n; ++i) probs[i] = std::exp(logw[i] - max_logw);
  const double total = vec::sum(probs.data(), n);
  vec::scale(probs.data(), 1.0 / total, n);
  return DenseDistribution(model.space(), std::move(probs));
}

std::vector<double> conditional(const PairwiseModel& model, const State& x,
                                std::size_t v) {
  check_state(model, x, "conditional");
  if (v >= model.space().num_variables()) {
    throw std::invalid_argument("conditional: variable index out of range");
  }
  const std::size_t labels = model.space().labels_per_variable();
  std::vector<double> scores(labels);
  for (std::size_t k = 0; k < labels; ++k) {
    scores[k] = model.node_weight(v, static_cast<std::int32_t>(k));
  }
  for (const auto& inc : model.incident(v)) {
    const std::int32_t other = x[inc.neighbor];
    for (std::size_t k = 0; k < labels; ++k) {
      const auto kk = static_cast<std::int32_t>(k);
      scores[k] += inc.is_first_endpoint ? model.edge_weight(inc.edge_index, kk, other)
                                         : model.edge_weight(inc.edge_index, other, kk);
    }
  }
  const double max_score = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max_score);
    total += s;
  }
  for (double& s : scores) s /= total;
  return scores;
}

GibbsMove gibbs_step(const PairwiseModel& model, const State& x, RngStream& rng) {
  const std::size_t v = rng.next_index(model.space().num_variables());
  const auto probs = conditional(model, x, v);
  const auto k = static_cast<std::int32_t>(rng.next_categorical(probs));
  GibbsMove move{x, v, k};
  move.next[v] = k;
  return move;
}

double kernel_logprob(const PairwiseModel& model, const State& x, const State& x_next) {
  check_state(model, x, "kernel_logprob");
  check_state(model, x_next, "kernel_logprob");
  const std::size_t num_vars = model.space().num_variables();

  std::size_t diff_site = 0;
  std::size_t diff_count = 0;
  for (std::size_t v = 0; v < num_vars; ++v) {
    if (x[v] != x_next[v]) {
      diff_site = v;
      if (++diff_count > 1) return -std::numeric_limits<double>::infinity();
    }
  }

  if (diff_count == 1) {
    const double p = conditional(model, x, diff_site)[static_cast<std::size_t>(x_next[diff_site])];
    return std::log(p / static_cast<double>(num_vars));
  }
  // Self-transition: every site could have been the one resampled.
  double total = 0.0;
  for (std::size_t v = 0; v < num_vars; ++v) {
    total += conditional(model, x, v)[static_cast<std::size_t>(x[v])];
  }
  return std::log(total / static_cast<double>(num_vars));
}

LocalFeatureGradient grad_step_logprob(const PairwiseModel& model, const State& x_prev,
                                       std::size_t v, std::int32_t k_new) {
  check_state(model, x_prev, "grad_step_logprob");
  const std::size_t labels = model.space().labels_per_variable();
  if (k_new < 0 || static_cast<std::size_t>(k_new) >= labels) {
    throw std::invalid_argument("grad_step_logprob: label out of range");
  }
  const auto probs = conditional(model, x_prev, v);

  LocalFeatureGradient grad;
  grad.reserve((model.incident(v).size() + 1) * labels);
  for (std::size_t k = 0; k < labels; ++k) {
    const double g = (static_cast<std::int32_t>(k) == k_new ? 1.0 : 0.0) - probs[k];
    grad.emplace_back(model.node_param(v, static_cast<std::int32_t>(k)), g);
  }
  for (const auto& inc : model.incident(v)) {
    const std::int32_t other = x_prev[inc.neighbor];
    for (std::size_t k = 0; k < labels; ++k) {
      const auto kk = static_cast<std::int32_t>(k);
      const double g = (kk == k_new ? 1.0 : 0.0) - probs[k];
      const std::size_t idx = inc.is_first_endpoint
                                  ? model.edge_param(inc.edge_index, kk, other)
                                  : model.edge_param(inc.edge_index, other, kk);
      grad.emplace_back(idx, g);
    }
  }
  std::sort(grad.begin(), grad.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return grad;
}

DenseKernel dense_gibbs_kernel(const PairwiseModel& model) {
  const std::size_t n = model.space().require_dense("dense_gibbs_kernel");
  const std::size_t num_vars = model.space().num_variables();
  const std::size_t labels = model.space().labels_per_variable();
  const double scan_prob = 1.0 / static_cast<double>(num_vars);

  std::vector<double> rows(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    State x = model.space().state_of(i);
    double self_mass = 0.0;
    for (std::size_t v = 0; v < num_vars; ++v) {
      const auto probs = conditional(model, x, v);
      const std::int32_t current = x[v];
      for (std::size_t k = 0; k < labels; ++k) {
        if (static_cast<std::int32_t>(k) == current) {
          self_mass += scan_prob * probs[k];
          continue;
        }
        x[v] = static_cast<std::int32_t>(k);
        rows[i * n + model.space().flat_index(x)] += scan_prob * probs[k];
        x[v] = current;
      }
    }
    rows[i * n + i] += self_mass;
  }
  return DenseKernel(model.space(), std::move(rows));
}

std::vector<double> sufficient_statistics(const PairwiseModel& model, const State& x) {
  check_state(model, x, "sufficient_statistics");
  std::vector<double> phi(model.num_params(), 0.0);
  for (std::size_t v = 0; v < model.space().num_variables(); ++v) {
    phi[model.node_param(v, x[v])] = 1.0;
  }
  const auto& edges = model.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    phi[model.edge_param(e, x[edges[e].u], x[edges[e].v])] = 1.0;
  }
  return phi;
}

}  // namespace doeblin
