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

#include "causalforge/scm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "causalforge/common.hpp"

namespace cforge {

std::string_view to_string(Nonlinearity kind) {
  switch (kind) {
    case Nonlinearity::kNone: return "none";
    case Nonlinearity::kQuadratic: return "quadratic";
    case Nonlinearity::kExponential: return "exponential";
    case Nonlinearity::kMixed: return "mixed";
  }
  return "none";
}

Nonlinearity parse_nonlinearity(std::string_view text) {
  if (text == "none" || text == "linear") return Nonlinearity::kNone;
  if (text == "quadratic") return Nonlinearity::kQuadratic;
  if (text == "exponential") return Nonlinearity::kExponential;
  if (text == "mixed") return Nonlinearity::kMixed;
  throw Error("unknown nonlinearity '" + std::string(text) + "'");
}

int required_parents(Nonlinearity kind) {
  switch (kind) {
    case Nonlinearity::kNone: return 1;
    case Nonlinearity::kQuadratic: return 3;
    case Nonlinearity::kExponential: return 2;
    case Nonlinearity::kMixed: return 4;
  }
  return 1;
}

void ScmSpec::validate() const {
  if (d < 2) throw ContractViolation("ScmSpec: d must be at least 2");
  if (n < 1) throw ContractViolation("ScmSpec: n must be positive");
  if (!(expected_degree >= 0.0)) {
    throw ContractViolation("ScmSpec: expected_degree must be non-negative");
  }
  if (!(weight_lo > 0.0 && weight_lo <= weight_hi)) {
    throw ContractViolation("ScmSpec: need 0 < weight_lo <= weight_hi");
  }
  if (!(noise_std > 0.0)) throw ContractViolation("ScmSpec: noise_std must be positive");
  if (target_parent_count < required_parents(nonlinearity) ||
      target_parent_count > d) {
    throw ContractViolation("ScmSpec: target_parent_count must lie in [" +
                            std::to_string(required_parents(nonlinearity)) +
                            ", d]");
  }
}

Eigen::VectorXd scm_target_mean(const ScmSample& sample,
                                const Eigen::MatrixXd& X, Nonlinearity kind) {
  const auto& p = sample.target_parents;
  const auto used = static_cast<std::size_t>(
      kind == Nonlinearity::kNone ? 0 : required_parents(kind));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(X.rows());
  for (std::size_t k = used; k < p.size(); ++k) {
    y += sample.target_weights(static_cast<Eigen::Index>(k)) * X.col(p[k]);
  }
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    switch (kind) {
      case Nonlinearity::kNone:
        break;
      case Nonlinearity::kQuadratic:
        y(i) += X(i, p[0]) * X(i, p[0]) + X(i, p[1]) * X(i, p[2]);
        break;
      case Nonlinearity::kExponential:
        y(i) += std::exp(0.5 * X(i, p[0])) + std::log(std::abs(X(i, p[1])) + 1.0);
        break;
      case Nonlinearity::kMixed:
        y(i) += X(i, p[0]) * X(i, p[0]) +
                std::sin(std::numbers::pi * X(i, p[1])) + X(i, p[2]) * X(i, p[3]);
        break;
    }
  }
  return y;
}

ScmSample generate_scm(const ScmSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int d = spec.d;
  const int n = spec.n;
  ScmSample out;

  Rng graph_rng = make_rng(seed, 0);
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform_index(graph_rng, i)]);
  }
  out.topological_order = order;

  const double edge_p = std::min(1.0, spec.expected_degree / (d - 1));
  auto draw_weight = [&](Rng& rng) {
    const double magnitude =
        spec.weight_lo + (spec.weight_hi - spec.weight_lo) * uniform01(rng);
    return uniform01(rng) < 0.5 ? -magnitude : magnitude;
  };
  out.adjacency = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      if (uniform01(graph_rng) < edge_p) {
        out.adjacency(order[static_cast<std::size_t>(a)],
                      order[static_cast<std::size_t>(b)]) = draw_weight(graph_rng);
      }
    }
  }

  Rng noise_rng = make_rng(seed, 1);
  out.feature_noise.resize(n, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < n; ++i) {
      out.feature_noise(i, j) = spec.noise_std * normal01(noise_rng);
    }
  }
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, d);
  const Eigen::MatrixXd W = out.adjacency.topLeftCorner(d, d);
  for (int j : order) {
    X.col(j) = X * W.col(j) + out.feature_noise.col(j);
  }

  Rng target_rng = make_rng(seed, 2);
  std::vector<int> candidates(static_cast<std::size_t>(d));
  std::iota(candidates.begin(), candidates.end(), 0);
  for (int k = 0; k < spec.target_parent_count; ++k) {
    const std::size_t pick =
        static_cast<std::size_t>(k) +
        uniform_index(target_rng, candidates.size() - static_cast<std::size_t>(k));
    std::swap(candidates[static_cast<std::size_t>(k)], candidates[pick]);
    out.target_parents.push_back(candidates[static_cast<std::size_t>(k)]);
  }
  out.target_weights.resize(spec.target_parent_count);
  for (int k = 0; k < spec.target_parent_count; ++k) {
    out.target_weights(k) = draw_weight(target_rng);
  }
  const int nonlinear_parents =
      spec.nonlinearity == Nonlinearity::kNone ? 0 : required_parents(spec.nonlinearity);
  for (int k = 0; k < spec.target_parent_count; ++k) {
    out.adjacency(out.target_parents[static_cast<std::size_t>(k)], d) =
        k < nonlinear_parents ? 1.0 : out.target_weights(k);
  }

  Rng target_noise_rng = make_rng(seed, 3);
  out.target_noise.resize(n);
  for (int i = 0; i < n; ++i) {
    out.target_noise(i) = spec.noise_std * normal01(target_noise_rng);
  }

  out.data.X = X;
  out.data.y = scm_target_mean(out, X, spec.nonlinearity) + out.target_noise;
  out.data.task = TaskKind::kRegression;
  out.data.class_count = 1;
  out.data.target_name = "y";
  for (int j = 0; j < d; ++j) out.data.feature_names.push_back("x" + std::to_string(j));
  return out;
}

}  // namespace cforge
