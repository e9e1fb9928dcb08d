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

#include <span>
#include <vector>

#include "doeblin/sampling.hpp"
#include "doeblin/state_space.hpp"

namespace doeblin {

// Fully factorized reference distribution: one categorical q_v per
// variable. Construction floors every entry at tol::kReferenceFloor and
// renormalizes, keeping the restart chain's support full and importance
// weights finite.
class ReferenceModel final : public ReferenceDistribution {
 public:
  ReferenceModel(StateSpace space, std::vector<std::vector<double>> q);

  static ReferenceModel uniform(const StateSpace& space);

  const std::vector<std::vector<double>>& q() const { return q_; }

  const StateSpace& space() const override { return space_; }
  State sample(RngStream& rng) const override;
  double log_prob(const State& x) const override;
  DenseDistribution densify() const override;

 private:
  StateSpace space_;
  std::vector<std::vector<double>> q_;
};

// Smoothed per-variable marginals: q_v[k] = (count(x_v = k) + alpha) /
// (n + alpha K). Throws on an empty dataset or alpha <= 0.
ReferenceModel fit_reference(std::span<const State> dataset, const StateSpace& space,
                             double alpha);

}  // namespace doeblin
