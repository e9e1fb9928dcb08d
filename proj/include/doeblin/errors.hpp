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

#include <stdexcept>
#include <string>

namespace doeblin {

// A dense/enumeration operation was asked to touch more than tol::kDenseCap
// states. CLI exit code 3.
struct SizeCapError : std::runtime_error {
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

// The stationary linear system was singular or produced an invalid
// distribution (reducible or otherwise non-ergodic kernel).
struct NonErgodicError : std::runtime_error {
  explicit NonErgodicError(const std::string& what) : std::runtime_error(what) {}
};

// Training parameters crossed the divergence guard. CLI exit code 4.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent configuration / input files. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace doeblin
