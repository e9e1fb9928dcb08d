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
#include <span>
#include <vector>

#include "doeblin/state_space.hpp"

namespace doeblin {

// Probability vector over an enumerated finite space. Immutable after
// construction; the constructor enforces nonnegativity and unit mass
// within tol::kMassTol.
class DenseDistribution {
 public:
  DenseDistribution(StateSpace space, std::vector<double> probs);

  static DenseDistribution uniform(const StateSpace& space);
  static DenseDistribution point_mass(const StateSpace& space, std::uint64_t flat);

  const StateSpace& space() const { return space_; }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::size_t size() const { return probs_.size(); }

 private:
  StateSpace space_;
  std::vector<double> probs_;
};

// Half the L1 distance. Throws std::invalid_argument on mismatched spaces.
double tv_distance(const DenseDistribution& p, const DenseDistribution& q);

// Normalized histogram of flat state indices. Throws on an empty sample
// list or an out-of-range index.
DenseDistribution empirical_distribution(std::span<const std::uint64_t> samples,
                                         const StateSpace& space);

}  // namespace doeblin
