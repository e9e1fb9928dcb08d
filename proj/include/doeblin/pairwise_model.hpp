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
#include <utility>
#include <vector>

#include "doeblin/dense_kernel.hpp"
#include "doeblin/distribution.hpp"
#include "doeblin/rng.hpp"
#include "doeblin/sampling.hpp"
#include "doeblin/state_space.hpp"

namespace doeblin {

struct Edge {
  std::size_t u;
  std::size_t v;
  bool operator==(const Edge&) const = default;
};

// Discrete pairwise MRF with overcomplete indicator features:
//
//   log p(x) = sum_v theta_node[v][x_v]
//            + sum_(u,v) theta_edge[(u,v)][x_u][x_v]  + const.
//
// Parameters live in one flat vector, node weights first (v major, label
// minor), then edge weights in canonical edge order (K*K blocks, first
// endpoint's label major). Edges are canonicalized at construction:
// u < v, sorted lexicographically, duplicates and self-loops rejected.
class PairwiseModel {
 public:
  PairwiseModel(StateSpace space, std::vector<Edge> edges, std::vector<double> theta);

  // Zero-parameter model over the given graph.
  static PairwiseModel zeros(StateSpace space, std::vector<Edge> edges);

  const StateSpace& space() const { return space_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& theta() const { return theta_; }
  std::size_t num_params() const { return theta_.size(); }

  PairwiseModel with_theta(std::vector<double> theta) const;

  std::size_t node_param(std::size_t v, std::int32_t k) const {
    return v * space_.labels_per_variable() + static_cast<std::size_t>(k);
  }
  std::size_t edge_param(std::size_t e, std::int32_t ku, std::int32_t kv) const {
    const std::size_t kk = space_.labels_per_variable();
    return space_.num_variables() * kk + e * kk * kk +
           static_cast<std::size_t>(ku) * kk + static_cast<std::size_t>(kv);
  }
  double node_weight(std::size_t v, std::int32_t k) const {
    return theta_[node_param(v, k)];
  }
  double edge_weight(std::size_t e, std::int32_t ku, std::int32_t kv) const {
    return theta_[edge_param(e, ku, kv)];
  }

  struct IncidentEdge {
    std::size_t edge_index;
    std::size_t neighbor;
    bool is_first_endpoint;  // true when the owning variable is edge.u
  };
  const std::vector<IncidentEdge>& incident(std::size_t v) const {
    return adjacency_[v];
  }

 private:
  StateSpace space_;
  std::vector<Edge> edges_;
  std::vector<double> theta_;
  std::vector<std::vector<IncidentEdge>> adjacency_;
};

// Unnormalized log-probability (the energy's negative).
double unnorm_logp(const PairwiseModel& model, const State& x);

// Full enumeration: probs[x] proportional to exp(unnorm_logp(x)), computed
// through log-sum-exp. Throws SizeCapError beyond the dense cap.
DenseDistribution exact_distribution(const PairwiseModel& model);

// P(x_v = k | x_{-v}) for k = 0..K-1; sums to 1.
std::vector<double> conditional(const PairwiseModel& model, const State& x,
                                std::size_t v);

struct GibbsMove {
  State next;
  std::size_t variable;
  std::int32_t label;
};

// One random-scan single-site update: v uniform, x'_v from the exact
// conditional. The chain's unit of time everywhere in this library.
GibbsMove gibbs_step(const PairwiseModel& model, const State& x, RngStream& rng);

// Log transition probability of the random-scan kernel, log of
// (1/V) sum_v 1[x' agrees with x off v] * conditional(x, v)[x'_v].
// -inf when x and x' differ at two or more sites; the self-transition
// aggregates contributions from every v.
double kernel_logprob(const PairwiseModel& model, const State& x, const State& x_next);

// Sparse gradient, sorted by flat parameter index.
using LocalFeatureGradient = std::vector<std::pair<std::size_t, double>>;

// Gradient of log conditional(model, x_prev, v)[k_new] in theta: indicator
// features of the chosen label (and its incident edge entries) minus their
// expectation under the conditional. Only parameters touching site v appear.
LocalFeatureGradient grad_step_logprob(const PairwiseModel& model, const State& x_prev,
                                       std::size_t v, std::int32_t k_new);

// Row [x][x'] = exp(kernel_logprob(x, x')). Throws SizeCapError beyond the cap.
DenseKernel dense_gibbs_kernel(const PairwiseModel& model);

// Indicator feature vector phi(x), length num_params().
std::vector<double> sufficient_statistics(const PairwiseModel& model, const State& x);

// SamplingKernel adapter so a model's Gibbs dynamics can drive a restart chain.
class GibbsKernel final : public SamplingKernel {
 public:
  explicit GibbsKernel(PairwiseModel model) : model_(std::move(model)) {}
  const StateSpace& space() const override { return model_.space(); }
  State step(const State& x, RngStream& rng) const override {
    return gibbs_step(model_, x, rng).next;
  }
  DenseKernel densify() const override { return dense_gibbs_kernel(model_); }
  const PairwiseModel& model() const { return model_; }

 private:
  PairwiseModel model_;
};

}  // namespace doeblin
