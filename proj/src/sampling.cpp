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

#include "doeblin/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace doeblin {

DenseKernelSampler::DenseKernelSampler(DenseKernel kernel)
    : kernel_(std::move(kernel)) {}

State DenseKernelSampler::step(const State& x, RngStream& rng) const {
  const std::uint64_t from = kernel_.space().flat_index(x);
  const std::size_t to = rng.next_categorical(kernel_.row(static_cast<std::size_t>(from)));
  return kernel_.space().state_of(to);
}

DenseReference::DenseReference(DenseDistribution dist) : dist_(std::move(dist)) {}

State DenseReference::sample(RngStream& rng) const {
  const std::size_t flat = rng.next_categorical(dist_.probs());
  return dist_.space().state_of(flat);
}

double DenseReference::log_prob(const State& x) const {
  const double p = dist_[static_cast<std::size_t>(dist_.space().flat_index(x))];
  return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

}  // namespace doeblin
