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

#include "doeblin/distribution.hpp"
#include "doeblin/state_space.hpp"

namespace doeblin {

// Row-stochastic transition matrix; rows index the current state, so a
// distribution evolves by left multiplication (mu <- mu A). Every row is
// validated to sum to 1 within tol::kMassTol at construction.
class DenseKernel {
 public:
  DenseKernel(StateSpace space, std::vector<double> row_major);

  static DenseKernel identity(const StateSpace& space);

  const StateSpace& space() const { return space_; }
  std::size_t size() const { return n_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  double at(std::size_t from, std::size_t to) const { return data_[from * n_ + to]; }
  std::span<const double> data() const { return data_; }

 private:
  StateSpace space_;
  std::size_t n_;
  std::vector<double> data_;
};

// One chain step in distribution space: result[y] = sum_x d[x] A[x][y].
// The raw product is rescaled by its own mass (a 1-ulp-level correction)
// so that long iterated pushes cannot drift out of the distribution
// invariant. Throws on mismatched spaces.
DenseDistribution apply(const DenseKernel& kernel, const DenseDistribution& dist);

// Unique stationary distribution of an ergodic kernel, by direct solve of
// (I - A^T) pi = 0 with the unit-mass constraint replacing the last
// equation. Verifies the fixed point to tol::kFixedPointTol and throws
// NonErgodicError when the system is singular or the residual check fails.
DenseDistribution stationary_of(const DenseKernel& kernel);

}  // namespace doeblin
