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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace doeblin::linalg {

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Solves A x = b by in-place Gaussian elimination with partial pivoting.
// `a` is row-major n*n and is destroyed; `rhs` holds b on entry and x on
// return. Throws SingularMatrixError when a pivot falls below
// n * eps * max|A|. The elimination inner loop runs on vec::axpy, so the
// solve inherits the runtime-selected SIMD path.
void lu_solve_in_place(std::vector<double>& a, std::span<double> rhs, std::size_t n);

}  // namespace doeblin::linalg
