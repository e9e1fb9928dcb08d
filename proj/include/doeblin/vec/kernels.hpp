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
#include <string_view>

// Vector primitives backing every dense inner loop (distribution pushes,
// TV distances, LU elimination, weighted gradient reductions).
//
// Two implementations ship: a scalar reference and an AVX2/FMA variant.
// The active one is picked once at startup from CPUID, overridable with
// DOEBLIN_ISA=scalar|avx2. Variants are equivalence-tested against the
// scalar reference; they may differ from it by reassociation-level
// rounding only.
namespace doeblin::vec {

enum class Isa { kScalar, kAvx2 };

struct Kernels {
  Isa isa;
  std::string_view name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum_i |a[i] - b[i]|
  double (*l1_dist)(const double* a, const double* b, std::size_t n);
  // max_i |a[i] - b[i]|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x[i] *= alpha
  void (*scale)(double* x, double alpha, std::size_t n);
};

const Kernels& scalar_kernels();

// nullptr when the binary or the CPU lacks AVX2 support.
const Kernels* avx2_kernels();

// Runtime-selected implementation (CPUID + DOEBLIN_ISA override; the
// override throws std::runtime_error when it names an unavailable ISA).
const Kernels& active();

// Convenience forwarders through active().
inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double l1_dist(const double* a, const double* b, std::size_t n) {
  return active().l1_dist(a, b, n);
}
inline double max_abs_diff(const double* a, const double* b, std::size_t n) {
  return active().max_abs_diff(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline void scale(double* x, double alpha, std::size_t n) {
  active().scale(x, alpha, n);
}

}  // namespace doeblin::vec
