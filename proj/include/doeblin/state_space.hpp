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
#include <cstdint>
#include <vector>

namespace doeblin {

// One configuration of the variables: labels in {0..K-1}, length V.
using State = std::vector<std::int32_t>;

// V discrete variables with K labels each; N = K^V flat states. A plain
// N-point space is StateSpace(1, N). Flat indexing is mixed-radix with
// variable 0 most significant.
class StateSpace {
 public:
  StateSpace(std::size_t num_variables, std::size_t labels_per_variable);

  std::size_t num_variables() const { return num_variables_; }
  std::size_t labels_per_variable() const { return labels_per_variable_; }

  // K^V saturated at 2^63 when it overflows; dense code paths must go
  // through require_dense().
  std::uint64_t cardinality() const { return cardinality_; }

  // Returns N after checking it against tol::kDenseCap; throws SizeCapError.
  std::size_t require_dense(const char* what) const;
  bool fits_dense() const;

  std::uint64_t flat_index(const State& x) const;
  State state_of(std::uint64_t flat) const;
  bool contains(const State& x) const;

  bool operator==(const StateSpace& other) const = default;

 private:
  std::size_t num_variables_;
  std::size_t labels_per_variable_;
  std::uint64_t cardinality_;
};

}  // namespace doeblin
