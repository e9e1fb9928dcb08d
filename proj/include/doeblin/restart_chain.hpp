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
#include <memory>
#include <utility>
#include <vector>

#include "doeblin/dense_kernel.hpp"
#include "doeblin/distribution.hpp"
#include "doeblin/rng.hpp"
#include "doeblin/sampling.hpp"

// The epsilon-restart (strong Doeblin) chain. Each step of the wrapped
// kernel draws a fresh state from the reference distribution with
// probability epsilon and otherwise takes one base-kernel step, so the
// wrapped kernel is the mixture (1-eps) A + eps * 1 pi_ref^T. Its unique
// stationary law is the geometric mixture
//
//   pi_eps = eps * sum_{t>=0} (1-eps)^t (pi_ref A^t),
//
// which the restart structure makes exactly sampleable: draw the time
// since the last restart T ~ Geom(eps), start at a reference draw, and
// take T base steps.
namespace doeblin {

class RestartChain {
 public:
  // Requires 0 < epsilon <= 1 (epsilon = 0 would forfeit every mixing
  // guarantee and is rejected).
  RestartChain(std::shared_ptr<const SamplingKernel> base,
               std::shared_ptr<const ReferenceDistribution> reference,
               double epsilon);

  const SamplingKernel& base() const { return *base_; }
  const ReferenceDistribution& reference() const { return *reference_; }
  double epsilon() const { return epsilon_; }
  const StateSpace& space() const { return base_->space(); }

 private:
  std::shared_ptr<const SamplingKernel> base_;
  std::shared_ptr<const ReferenceDistribution> reference_;
  double epsilon_;
};

struct RestartEvent {
  bool restarted;
  State next_state;
};

// One wrapped-kernel step: the restart decision replaces the base step
// rather than composing with it.
RestartEvent wrapped_step(const RestartChain& chain, const State& x, RngStream& rng);

// Time since the last restart: P(T = t) = eps (1-eps)^t, t = 0, 1, ...
// Sampled by inversion, T = floor(log(U) / log(1-eps)); epsilon = 1 short-
// circuits to 0. Throws std::invalid_argument outside (0, 1].
std::uint64_t sample_restart_time(double epsilon, RngStream& rng);

// Exact draw from pi_eps (no burn-in, no truncation bias).
State sample_stationary(const RestartChain& chain, RngStream& rng);

// Densified wrapped kernel (1-eps) A + eps * 1 pi_ref^T.
DenseKernel wrapped_dense(const DenseKernel& base, const DenseDistribution& reference,
                          double epsilon);

// pi_eps by direct linear solve of (I - (1-eps) A^T) pi = eps pi_ref;
// the system is nonsingular for every eps > 0. The fixed-point residual
// through the wrapped kernel is verified to tol::kFixedPointTol.
DenseDistribution stationary_dense(const DenseKernel& base,
                                   const DenseDistribution& reference, double epsilon);

// One contraction probe: lhs = TV(mu Awrap, nu Awrap) and
// rhs = (1-eps) TV(mu, nu). The Doeblin structure guarantees lhs <= rhs.
std::pair<double, double> contraction_check(const DenseKernel& base,
                                            const DenseDistribution& reference,
                                            double epsilon, const DenseDistribution& mu,
                                            const DenseDistribution& nu);

// TV(start Awrap^t, pi_eps) for t = 0..t_max; geometric decay makes
// entry t at most (1-eps)^t times entry 0.
std::vector<std::pair<std::uint64_t, double>> mixing_curve(
    const DenseKernel& base, const DenseDistribution& reference, double epsilon,
    const DenseDistribution& start, std::uint64_t t_max);

struct ApproximationGapRow {
  double epsilon;
  double tv_gap;      // TV(pi_eps, pi) against the base chain's stationary law
  double bound_proxy; // sum_t eps (1-eps)^t TV(pi_ref A^t, pi), tail below kGeometricTailTol
};

// How far pi_eps sits from the base chain's own stationary distribution,
// per epsilon, with a dominating triangle-inequality proxy for each gap.
// Throws NonErgodicError when the base chain has no unique stationary law.
std::vector<ApproximationGapRow> approximation_gap(const DenseKernel& base,
                                                   const DenseDistribution& reference,
                                                   std::span<const double> epsilons);

}  // namespace doeblin
