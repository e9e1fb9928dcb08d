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

#include "doeblin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "doeblin/vec/kernels.hpp"

namespace doeblin::linalg {

void lu_solve_in_place(std::vector<double>& a, std::span<double> rhs, std::size_t n) {
  if (a.size() != n * n || rhs.size() != n) {
    throw std::invalid_argument("lu_solve_in_place: shape mismatch");
  }
  double max_abs = 0.0;
  for (double v : a) max_abs = std::max(max_abs, std::fabs(v));
  const double pivot_tol =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_abs;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double pivot_mag = std::fabs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::fabs(a[r * n + col]);
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (pivot_mag <= pivot_tol) {
      throw SingularMatrixError("singular system at column " + std::to_string(col));
    }
    if (pivot_row != col) {
      for (std::size_t j = col; j < n; ++j) {
        std::swap(a[col * n + j], a[pivot_row * n + j]);
      }
      std::swap(rhs[col], rhs[pivot_row]);
    }
    const double pivot = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / pivot;
      if (factor == 0.0) continue;
      a[r * n + col] = 0.0;
      vec::axpy(-factor, &a[col * n + col + 1], &a[r * n + col + 1], n - col - 1);
      rhs[r] -= factor * rhs[col];
    }
  }

  // Back substitution.
  for (std::size_t row = n; row-- > 0;) {
    double v = rhs[row];
    v -= vec::dot(&a[row * n + row + 1], &rhs[row + 1], n - row - 1);
    rhs[row] = v / a[row * n + row];
  }
}

}  // namespace doeblin::linalg
