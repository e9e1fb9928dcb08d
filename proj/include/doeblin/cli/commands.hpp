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

#include "doeblin/cli/config.hpp"

// Command bodies behind the CLI front end. Each is a pure function of the
// config and its input files: reruns produce byte-identical outputs, with
// the single exception of wallclock fields in training logs and bench
// timings. Errors surface as the typed exceptions in errors.hpp; the
// binary maps them to exit codes (config 2, size cap 3, divergence 4).
namespace doeblin::cli {

// Samples a dataset exactly from a teacher chain's stationary law and
// writes it with the teacher artifacts (model, reference, metadata).
void cmd_gen(const ExperimentConfig& config);

// Trains from theta = 0 on the configured dataset; writes the learned
// model, its reference, and the training log (one row per evaluation,
// flushed as produced so an abort keeps the partial log).
void cmd_train(const ExperimentConfig& config);

// Mean exact log-likelihood of a dataset under the model's restart chain,
// with reference-only and exact-model columns for comparison. Refuses
// (SizeCapError) when the space cannot be densified.
void cmd_eval(const ExperimentConfig& config);

// Mixing curves, stationarity gap vs the base chain, and a contraction
// audit, as plot-ready TSV tables.
void cmd_diag(const ExperimentConfig& config);

// Throughput and latency numbers for the main kernels, TSV.
void cmd_bench(const ExperimentConfig& config);

}  // namespace doeblin::cli
