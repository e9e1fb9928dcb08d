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

#include <memory>

#include "doeblin/dense_kernel.hpp"
#include "doeblin/distribution.hpp"
#include "doeblin/rng.hpp"
#include "doeblin/state_space.hpp"

namespace doeblin {

// A Markov transition kernel usable for simulation. Implementations are
// immutable and safe to share across threads; all randomness flows through
// the explicit RngStream argument.
class SamplingKernel {
 public:
  virtual ~SamplingKernel() = default;
  virtual const StateSpace& space() const = 0;
  virtual State step(const State& x, RngStream& rng) const = 0;
  // Full N x N transition matrix; only valid under the dense cap.
  virtual DenseKernel densify() const = 0;
};

// A distribution supporting exact draws and pointwise log-probability;
// the restart target of a strong Doeblin chain.
class ReferenceDistribution {
 public:
  virtual ~ReferenceDistribution() = default;
  virtual const StateSpace& space() const = 0;
  virtual State sample(RngStream& rng) const = 0;
  virtual double log_prob(const State& x) const = 0;
  virtual DenseDistribution densify() const = 0;
};

// Simulation adapter for an explicit transition matrix (CDF inversion per
// row). States are carried in flat form through StateSpace's index maps.
class DenseKernelSampler final : public SamplingKernel {
 public:
  explicit DenseKernelSampler(DenseKernel kernel);
  const StateSpace& space() const override { return kernel_.space(); }
  State step(const State& x, RngStream& rng) const override;
  DenseKernel densify() const override { return kernel_; }

 private:
  DenseKernel kernel_;
};

// Reference wrapper around an explicit probability vector.
class DenseReference final : public ReferenceDistribution {
 public:
  explicit DenseReference(DenseDistribution dist);
  const StateSpace& space() const override { return dist_.space(); }
  State sample(RngStream& rng) const override;
  double log_prob(const State& x) const override;
  DenseDistribution densify() const override { return dist_; }

 private:
  DenseDistribution dist_;
};

}  // namespace doeblin
