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

#include "doeblin/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "doeblin/tolerances.hpp"
#include "doeblin/vec/kernels.hpp"

namespace doeblin {

DenseDistribution::DenseDistribution(StateSpace space, std::vector<double> probs)
    : space_(space), probs_(std::move(probs)) {
  const std::size_t n = space_.require_dense("DenseDistribution");
  if (probs_.size() != n) {
    throw std::invalid_argument("DenseDistribution: length " +
                                std::to_string(probs_.size()) +
                                " does not match state count " + std::to_string(n));
  }
  for (double p : probs_) {
    if (!(p >= 0.0)) {  // also rejects NaN
      throw std::invalid_argument("DenseDistribution: negative or NaN entry");
    }
  }
  const double mass = vec::sum(probs_.data(), probs_.size());
  if (std::fabs(mass - 1.0) > tol::kMassTol) {
    throw std::invalid_argument("DenseDistribution: mass " + std::to_string(mass) +
                                " deviates from 1 beyond tolerance");
  }
}

DenseDistribution DenseDistribution::uniform(const StateSpace& space) {
  const std::size_t n = space.require_dense("DenseDistribution::uniform");
  return DenseDistribution(space, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DenseDistribution DenseDistribution::point_mass(const StateSpace& space,
                                                std::uint64_t flat) {
  const std::size_t n = space.require_dense("DenseDistribution::point_mass");
  if (flat >= n) throw std::invalid_argument("point_mass: index out of range");
  std::vector<double> p(n, 0.0);
  p[static_cast<std::size_t>(flat)] = 1.0;
  return DenseDistribution(space, std::move(p));
}

double tv_distance(const DenseDistribution& p, const DenseDistribution& q) {
  if (p.space() != q.space()) {
    throw std::invalid_argument("tv_distance: mismatched state spaces");
  }
  return 0.5 * vec::l1_dist(p.probs().data(), q.probs().data(), p.size());
}

DenseDistribution empirical_distribution(std::span<const std::uint64_t> samples,
                                         const StateSpace& space) {
  const std::size_t n = space.require_dense("empirical_distribution");
  if (samples.empty()) {
    throw std::invalid_argument("empirical_distribution: empty sample list");
  }
  std::vector<double> counts(n, 0.0);
  for (std::uint64_t s : samples) {
    if (s >= n) throw std::invalid_argument("empirical_distribution: index out of range");
    counts[static_cast<std::size_t>(s)] += 1.0;
  }
  vec::scale(counts.data(), 1.0 / static_cast<double>(samples.size()), counts.size());
  return DenseDistribution(space, std::move(counts));
}

}  // namespace doeblin
