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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace doeblin {

// splitmix64 finalizer; also used to expand seeds.
std::uint64_t mix64(std::uint64_t x);

// Deterministic stream derivation: every stochastic subsystem owns a stream
// keyed by (root seed, purpose tag, indices). Results are independent of
// scheduling because no two subsystems share a stream.
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices = {});

// xoshiro256++ with all draw primitives implemented in-repo so that output
// is reproducible across standard libraries and platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit mantissa.
  double next_unit();

  // Uniform in (0, 1); resamples the (measure-zero) exact zero.
  double next_unit_open();

  // Uniform index in [0, n). n must be positive.
  std::size_t next_index(std::size_t n);

  // CDF inversion over `probs` (assumed nonnegative, summing to ~1).
  // Clamps to the last index against rounding in the running sum.
  std::size_t next_categorical(std::span<const double> probs);

  // Box-Muller; consumes two uniforms per call.
  double next_gaussian();

  // true with probability p.
  bool next_bernoulli(double p);

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace doeblin
