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

#include "doeblin/restart_chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "doeblin/errors.hpp"
#include "doeblin/linalg.hpp"
#include "doeblin/tolerances.hpp"
#include "doeblin/vec/kernels.hpp"

namespace doeblin {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1], got " +
                                std::to_string(epsilon));
  }
}

void check_spaces(const StateSpace& a, const StateSpace& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": state spaces differ");
}

}  // namespace

RestartChain::RestartChain(std::shared_ptr<const SamplingKernel> base,
                           std::shared_ptr<const ReferenceDistribution> reference,
                           double epsilon)
    : base_(std::move(base)), reference_(std::move(reference)), epsilon_(epsilon) {
  if (!base_ || !reference_) {
    throw std::invalid_argument("RestartChain: base and reference must be non-null");
  }
  check_spaces(base_->space(), reference_->space(), "RestartChain");
  check_epsilon(epsilon);
}

RestartEvent wrapped_step(const RestartChain& chain, const State& x, RngStream& rng) {
  if (!chain.space().contains(x)) {
    throw std::invalid_argument("wrapped_step: state out of range");
  }
  if (rng.next_bernoulli(chain.epsilon())) {
    return {true, chain.reference().sample(rng)};
  }
  return {false, chain.base().step(x, rng)};
}

std::uint64_t sample_restart_time(double epsilon, RngStream& rng) {
  check_epsilon(epsilon);
  if (epsilon == 1.0) return 0;
  // Inversion of the geometric CDF; U is kept away from 0 so log(U) is
  // finite. floor(log U / log(1-eps)) has exactly the right pmf.
  const double u = rng.next_unit_open();
  const double t = std::floor(std::log(u) / std::log1p(-epsilon));
  return static_cast<std::uint64_t>(t);
}

State sample_stationary(const RestartChain& chain, RngStream& rng) {
  const std::uint64_t steps = sample_restart_time(chain.epsilon(), rng);
  State x = chain.reference().sample(rng);
  for (std::uint64_t t = 0; t < steps; ++t) {
    x = chain.base().step(x, rng);
  }
  return x;
}

DenseKernel wrapped_dense(const DenseKernel& base, const DenseDistribution& reference,
                          double epsilon) {
  check_epsilon(epsilon);
  check_spaces(base.space(), reference.space(), "wrapped_dense");
  const std::size_t n = base.size();
  std::vector<double> rows(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i * n + j] = (1.0 - epsilon) * base.at(i, j) + epsilon * reference[j];
    }
  }
  return DenseKernel(base.space(), std::move(rows));
}

DenseDistribution stationary_dense(const DenseKernel& base,
                                   const DenseDistribution& reference, double epsilon) {
  check_epsilon(epsilon);
  check_spaces(base.space(), reference.space(), "stationary_dense");
  const std::size_t n = base.size();

  std::vector<double> m(n * n);
  const double retain = 1.0 - epsilon;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = (i == j ? 1.0 : 0.0) - retain * base.at(j, i);
    }
  }
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = epsilon * reference[i];

  try {
    linalg::lu_solve_in_place(m, pi, n);
  } catch (const linalg::SingularMatrixError& e) {
    // Unreachable for eps > 0: the spectral radius of (1-eps) A is below 1.
    throw std::runtime_error(std::string("stationary_dense: ") + e.what());
  }

  double mass = 0.0;
  for (double& v : pi) {
    if (v < 0.0) v = 0.0;
    mass += v;
  }
  vec::scale(pi.data(), 1.0 / mass, n);
  DenseDistribution result(base.space(), std::move(pi));

  const DenseKernel wrapped = wrapped_dense(base, reference, epsilon);
  const double residual = tv_distance(apply(wrapped, result), result);
  if (residual > tol::kFixedPointTol) {
    throw std::runtime_error("stationary_dense: fixed-point residual " +
                             std::to_string(residual));
  }
  return result;
}

std::pair<double, double> contraction_check(const DenseKernel& base,
                                            const DenseDistribution& reference,
                                            double epsilon, const DenseDistribution& mu,
                                            const DenseDistribution& nu) {
  check_spaces(base.space(), mu.space(), "contraction_check");
  check_spaces(base.space(), nu.space(), "contraction_check");
  const DenseKernel wrapped = wrapped_dense(base, reference, epsilon);
  const double lhs = tv_distance(apply(wrapped, mu), apply(wrapped, nu));
  const double rhs = (1.0 - epsilon) * tv_distance(mu, nu);
  return {lhs, rhs};
}

std::vector<std::pair<std::uint64_t, double>> mixing_curve(
    const DenseKernel& base, const DenseDistribution& reference, double epsilon,
    const DenseDistribution& start, std::uint64_t t_max) {
  check_spaces(base.space(), start.space(), "mixing_curve");
  const DenseKernel wrapped = wrapped_dense(base, reference, epsilon);
  const DenseDistribution target = stationary_dense(base, reference, epsilon);

  std::vector<std::pair<std::uint64_t, double>> curve;
  curve.reserve(static_cast<std::size_t>(t_max) + 1);
  DenseDistribution current = start;
  for (std::uint64_t t = 0;; ++t) {
    curve.emplace_back(t, tv_distance(current, target));
    if (t == t_max) break;
    current = apply(wrapped, current);
  }
  return curve;
}

std::vector<ApproximationGapRow> approximation_gap(const DenseKernel& base,
                                                   const DenseDistribution& reference,
                                                   std::span<const double> epsilons) {
  check_spaces(base.space(), reference.space(), "approximation_gap");
  const DenseDistribution pi = stationary_of(base);  // throws NonErgodicError

  std::vector<ApproximationGapRow> rows;
  rows.reserve(epsilons.size());
  for (double epsilon : epsilons) {
    check_epsilon(epsilon);
    const DenseDistribution pi_eps = stationary_dense(base, reference, epsilon);
    const double gap = tv_distance(pi_eps, pi);

    // B(eps) = sum_t eps (1-eps)^t TV(pi_ref A^t, pi) dominates the gap by
    // the triangle inequality; truncate once the geometric tail mass drops
    // below kGeometricTailTol (TV is bounded by 1, so the neglected part is
    // at most the tail mass itself).
    double bound = 0.0;
    double tail_mass = 1.0;  // (1-eps)^t at the current t
    DenseDistribution pushed = reference;
    for (std::uint64_t t = 0;; ++t) {
      bound += epsilon * tail_mass * tv_distance(pushed, pi);
      tail_mass *= (1.0 - epsilon);
      if (tail_mass <= tol::kGeometricTailTol) break;
      pushed = apply(base, pushed);
    }
    rows.push_back({epsilon, gap, bound});
  }
  return rows;
}

}  // namespace doeblin
