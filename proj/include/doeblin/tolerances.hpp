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

// Single source for every numeric tolerance and size cap; tests include
// this header instead of restating magic numbers.
namespace doeblin::tol {

// Unit-mass / row-stochasticity slack for probability vectors and kernels.
inline constexpr double kMassTol = 1e-12;

// Stationarity residual for linear solves (infinity norm and TV).
inline constexpr double kFixedPointTol = 1e-10;

// Largest state count that may be enumerated / densified.
inline constexpr std::size_t kDenseCap = 4096;

// Per-label floor applied to reference model probabilities.
inline constexpr double kReferenceFloor = 1e-6;

// Central-difference step for gradient oracles.
inline constexpr double kFdStep = 1e-5;

// Training aborts when any |theta| crosses this bound.
inline constexpr double kThetaLimit = 50.0;

// Neglected tail mass when truncating geometric series.
inline constexpr double kGeometricTailTol = 1e-10;

}  // namespace doeblin::tol
