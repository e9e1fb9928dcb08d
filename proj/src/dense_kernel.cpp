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

#include "doeblin/dense_kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "doeblin/errors.hpp"
#include "doeblin/linalg.hpp"
#include "doeblin/tolerances.hpp"
#include "doeblin/vec/kernels.hpp"

namespace doeblin {

DenseKernel::DenseKernel(StateSpace space, std::vector<double> row_major)
    : space_(space), n_(space.require_dense("DenseKernel")), data_(std::move(row_major)) {
  if (data_.size() != n_ * n_) {
    throw std::invalid_argument("DenseKernel: expected " + std::to_string(n_ * n_) +
                                " entries, got " + std::to_string(data_.size()));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const double* r = data_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(r[j] >= 0.0)) {
        throw std::invalid_argument("DenseKernel: negative or NaN entry in row " +
                                    std::to_string(i));
      }
    }
    const double row_sum = vec::sum(r, n_);
    if (std::fabs(row_sum - 1.0) > tol::kMassTol) {
      throw std::invalid_argument("DenseKernel: row " + std::to_string(i) +
                                  " sums to " + std::to_string(row_sum));
    }
  }
}

DenseKernel DenseKernel::identity(const StateSpace& space) {
  const std::size_t n = space.require_dense("DenseKernel::identity");
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return DenseKernel(space, std::move(data));
}

DenseDistribution apply(const DenseKernel& kernel, const DenseDistribution& dist) {
  if (kernel.space() != dist.space()) {
    throw std::invalid_argument("apply: kernel and distribution spaces differ");
  }
  const std::size_t n = kernel.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    const double mass = dist[x];
    if (mass == 0.0) continue;
    vec::axpy(mass, kernel.row(x).data(), out.data(), n);
  }
  for (double& v : out) {
    if (v < 0.0) v = 0.0;  // rounding can leave -1e-20-scale dust
  }
  const double total = vec::sum(out.data(), n);
  vec::scale(out.data(), 1.0 / total, n);
  return DenseDistribution(kernel.space(), std::move(out));
}

DenseDistribution stationary_of(const DenseKernel& kernel) {
  const std::size_t n = kernel.size();
  // (I - A^T) pi = 0 with the last equation replaced by sum(pi) = 1. Any
  // single row of I - A^T is redundant (the rows sum to zero), so the
  // replacement never discards information.
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = (i == j ? 1.0 : 0.0) - kernel.at(j, i);
    }
  }
  for (std::size_t j = 0; j < n; ++j) m[(n - 1) * n + j] = 1.0;
  std::vector<double> pi(n, 0.0);
  pi[n - 1] = 1.0;

  try {
    linalg::lu_solve_in_place(m, pi, n);
  } catch (const linalg::SingularMatrixError&) {
    throw NonErgodicError("non-ergodic kernel: stationary system is singular");
  }

  double mass = 0.0;
  for (double& v : pi) {
    if (v < 0.0) {
      if (v < -1e-9) throw NonErgodicError("non-ergodic kernel: negative stationary mass");
      v = 0.0;
    }
    mass += v;
  }
  vec::scale(pi.data(), 1.0 / mass, n);

  DenseDistribution result(kernel.space(), std::move(pi));
  const DenseDistribution pushed = apply(kernel, result);
  const double residual =
      vec::max_abs_diff(pushed.probs().data(), result.probs().data(), n);
  if (residual > tol::kFixedPointTol) {
    throw NonErgodicError("non-ergodic kernel: fixed-point residual " +
                          std::to_string(residual));
  }
  return result;
}

}  // namespace doeblin
