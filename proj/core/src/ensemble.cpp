/* Copyright 2026 The causalforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "causalforge/ensemble.hpp"

#include <cmath>
#include <limits>

#include "causalforge/common.hpp"

namespace cforge {

double EdgeProbabilities::mean_confidence() const {
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) > 0.0) {
        sum += p(i, j);
        ++count;
      }
    }
  }
  return count == 0 ? 0.0 : sum / count;
}

EdgeProbabilities bootstrap_ensemble(const Eigen::MatrixXd& X, int B, double lambda,
                                     std::uint64_t seed, const NotearsOptions& opts,
                                     double tau) {
  if (B < 1) throw ContractViolation("bootstrap_ensemble: B must be at least 1");
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  EdgeProbabilities out;
  out.requested = B;
  out.p = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd resample(n, d);
  for (int b = 0; b < B; ++b) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(b));
    for (Eigen::Index i = 0; i < n; ++i) {
      resample.row(i) = X.row(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::size_t>(n))));
    }
    const WeightedAdjacency fit = notears_fit(resample, lambda, opts);
    if (!fit.converged) continue;
    const DagExtraction dag = threshold_to_dag(fit.W, tau);
    for (const auto& [i, j] : dag.graph.edges()) {
      out.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += 1.0;
    }
    ++out.bootstrap_count;
  }
  if (out.bootstrap_count == 0) {
    throw Error("bootstrap_ensemble: none of the " + std::to_string(B) +
                " bootstrap fits converged");
  }
  out.p /= static_cast<double>(out.bootstrap_count);
  return out;
}

std::vector<CausalRole> soft_roles(const EdgeProbabilities& probs, std::size_t target) {
  const auto d = static_cast<std::size_t>(probs.p.rows());
  if (target >= d) throw ContractViolation("soft_roles: target out of range");
  auto p = [&](std::size_t i, std::size_t j) {
    return probs.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  std::vector<CausalRole> roles;
  roles.reserve(d - 1);
  for (std::size_t f = 0; f < d; ++f) {
    if (f == target) continue;
    // best[k]: largest probability product over paths k ~> target avoiding f
    // (max-product Dijkstra on the reversed graph).
    std::vector<double> best(d, 0.0);
    std::vector<char> done(d, 0);
    best[target] = 1.0;
    done[f] = 1;
    for (;;) {
      std::size_t u = d;
      for (std::size_t k = 0; k < d; ++k) {
        if (!done[k] && best[k] > 0.0 && (u == d || best[k] > best[u])) u = k;
      }
      if (u == d) break;
      done[u] = 1;
      for (std::size_t k = 0; k < d; ++k) {
        if (!done[k] && k != u) best[k] = std::max(best[k], p(k, u) * best[u]);
      }
    }
    const double direct = p(f, target);
    double indirect = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (k != f && k != target) indirect = std::max(indirect, p(f, k) * best[k]);
    }
    const double other = 1.0 - std::max(direct, indirect);
    if (direct >= indirect && direct >= other) {
      roles.push_back(CausalRole::kDirect);
    } else if (indirect >= other) {
      roles.push_back(CausalRole::kIndirect);
    } else {
      roles.push_back(CausalRole::kOther);
    }
  }
  return roles;
}

}  // namespace cforge
