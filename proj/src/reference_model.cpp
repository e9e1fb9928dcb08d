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

#include "doeblin/reference_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "doeblin/tolerances.hpp"

namespace doeblin {

namespace {

// Floor-and-renormalize until stable; a second pass is only ever needed
// when renormalization nudges a floored entry back below the floor.
void apply_floor(std::vector<double>& q) {
  for (int pass = 0; pass < 8; ++pass) {
    bool clipped = false;
    double total = 0.0;
    for (double& p : q) {
      if (p < tol::kReferenceFloor) {
        p = tol::kReferenceFloor;
        clipped = true;
      }
      total += p;
    }
    for (double& p : q) p /= total;
    bool below = false;
    for (double p : q) below |= p < tol::kReferenceFloor;
    if (!below) return;
    if (!clipped) return;
  }
  throw std::runtime_error("ReferenceModel: probability floor failed to stabilize");
}

}  // namespace

ReferenceModel::ReferenceModel(StateSpace space, std::vector<std::vector<double>> q)
    : space_(space), q_(std::move(q)) {
  if (q_.size() != space_.num_variables()) {
    throw std::invalid_argument("ReferenceModel: expected one categorical per variable");
  }
  for (auto& qv : q_) {
    if (qv.size() != space_.labels_per_variable()) {
      throw std::invalid_argument("ReferenceModel: categorical length mismatch");
    }
    for (double p : qv) {
      if (!(p >= 0.0)) throw std::invalid_argument("ReferenceModel: negative entry");
    }
    double total = 0.0;
    for (double p : qv) total += p;
    if (total <= 0.0) throw std::invalid_argument("ReferenceModel: zero-mass categorical");
    for (double& p : qv) p /= total;
    apply_floor(qv);
  }
}

ReferenceModel ReferenceModel::uniform(const StateSpace& space) {
  const double p = 1.0 / static_cast<double>(space.labels_per_variable());
  return ReferenceModel(space, std::vector<std::vector<double>>(
                                   space.num_variables(),
                                   std::vector<double>(space.labels_per_variable(), p)));
}

State ReferenceModel::sample(RngStream& rng) const {
  State x(space_.num_variables());
  for (std::size_t v = 0; v < q_.size(); ++v) {
    x[v] = static_cast<std::int32_t>(rng.next_categorical(q_[v]));
  }
  return x;
}

double ReferenceModel::log_prob(const State& x) const {
  if (!space_.contains(x)) throw std::invalid_argument("ReferenceModel: state out of range");
  double total = 0.0;
  for (std::size_t v = 0; v < q_.size(); ++v) {
    total += std::log(q_[v][static_cast<std::size_t>(x[v])]);
  }
  return total;
}

DenseDistribution ReferenceModel::densify() const {
  const std::size_t n = space_.require_dense("ReferenceModel::densify");
  std::vector<double> probs(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    probs[i] = std::exp(log_prob(space_.state_of(i)));
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return DenseDistribution(space_, std::move(probs));
}

ReferenceModel fit_reference(std::span<const State> dataset, const StateSpace& space,
                             double alpha) {
  if (dataset.empty()) throw std::invalid_argument("fit_reference: empty dataset");
  if (!(alpha > 0.0)) throw std::invalid_argument("fit_reference: alpha must be positive");
  const std::size_t labels = space.labels_per_variable();
  std::vector<std::vector<double>> q(space.num_variables(),
                                     std::vector<double>(labels, 0.0));
  for (const State& x : dataset) {
    if (!space.contains(x)) throw std::invalid_argument("fit_reference: row out of range");
    for (std::size_t v = 0; v < space.num_variables(); ++v) {
      q[v][static_cast<std::size_t>(x[v])] += 1.0;
    }
  }
  const double denom =
      static_cast<double>(dataset.size()) + alpha * static_cast<double>(labels);
  for (auto& qv : q) {
    for (double& c : qv) c = (c + alpha) / denom;
  }
  return ReferenceModel(space, std::move(q));
}

}  // namespace doeblin
