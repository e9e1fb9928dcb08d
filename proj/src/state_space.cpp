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

#include "doeblin/state_space.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "doeblin/errors.hpp"
#include "doeblin/tolerances.hpp"

namespace doeblin {

namespace {
constexpr std::uint64_t kSaturated = std::uint64_t{1} << 63;
}

StateSpace::StateSpace(std::size_t num_variables, std::size_t labels_per_variable)
    : num_variables_(num_variables), labels_per_variable_(labels_per_variable) {
  if (num_variables == 0 || labels_per_variable == 0) {
    throw std::invalid_argument("StateSpace: V and K must be positive");
  }
  if (labels_per_variable >
      static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw std::invalid_argument("StateSpace: K exceeds the label type");
  }
  std::uint64_t n = 1;
  for (std::size_t v = 0; v < num_variables; ++v) {
    if (n >= kSaturated / labels_per_variable) {
      n = kSaturated;
      break;
    }
    n *= labels_per_variable;
  }
  cardinality_ = n;
}

std::size_t StateSpace::require_dense(const char* what) const {
  if (!fits_dense()) {
    throw SizeCapError(std::string(what) + ": state count " +
                       (cardinality_ == kSaturated ? std::string(">=2^63")
                                                   : std::to_string(cardinality_)) +
                       " exceeds the dense cap " + std::to_string(tol::kDenseCap));
  }
  return static_cast<std::size_t>(cardinality_);
}

bool StateSpace::fits_dense() const { return cardinality_ <= tol::kDenseCap; }

std::uint64_t StateSpace::flat_index(const State& x) const {
  if (!contains(x)) throw std::invalid_argument("flat_index: state out of range");
  std::uint64_t idx = 0;
  for (std::size_t v = 0; v < num_variables_; ++v) {
    idx = idx * labels_per_variable_ + static_cast<std::uint64_t>(x[v]);
  }
  return idx;
}

State StateSpace::state_of(std::uint64_t flat) const {
  if (flat >= cardinality_) throw std::invalid_argument("state_of: index out of range");
  State x(num_variables_);
  for (std::size_t v = num_variables_; v-- > 0;) {
    x[v] = static_cast<std::int32_t>(flat % labels_per_variable_);
    flat /= labels_per_variable_;
  }
  return x;
}

bool StateSpace::contains(const State& x) const {
  if (x.size() != num_variables_) return false;
  for (auto label : x) {
    if (label < 0 || static_cast<std::size_t>(label) >= labels_per_variable_) {
      return false;
    }
  }
  return true;
}

}  // namespace doeblin
