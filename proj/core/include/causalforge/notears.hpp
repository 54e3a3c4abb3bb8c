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

#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cforge {

struct NotearsOptions {
  int max_dual_iters = 200;
  int max_inner_iters = 500;
  double h_tol = 1e-8;
  double grad_tol = 1e-6;  // projected inner gradient, inf-norm, per unit rho
  double rho_init = 1.0;
  double rho_growth = 1.25;
  double rho_max = 1e12;
  int lbfgs_memory = 10;
  bool scale_columns = false;  // centering only by default
  // When set, receives one vector of inner objective values per dual step.
  std::vector<std::vector<double>>* inner_trace = nullptr;
};

struct WeightedAdjacency {
  Eigen::MatrixXd W;  // W(i, j) is the weight of edge i -> j
  std::vector<std::string> var_names;
  double lambda = 0.0;
  bool converged = false;
  int dual_iterations = 0;
  double h = 0.0;
};

/// Zero-mean, unit-variance columns. Constant columns are centered only.
Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x);

/// The data the solver sees: centered, and scaled when opts.scale_columns.
Eigen::MatrixXd prepare_columns(const Eigen::MatrixXd& x, const NotearsOptions& opts);

/// Linear NOTEARS with an L1 penalty, solved by the augmented Lagrangian
/// method. X is centered internally (see prepare_columns). The L1 term is
/// handled through the split W = W+ - W- with both parts non-negative, which
/// makes every inner problem smooth and bound-constrained.
WeightedAdjacency notears_fit(const Eigen::MatrixXd& X, double lambda,
                              const NotearsOptions& opts = {});

/// n*d*log(RSS/(n*d)) + k*log(n) on prepared X with W thresholded at tau.
double bic_score(const Eigen::MatrixXd& x_prepared,
                 const Eigen::MatrixXd& w, double tau);

struct LambdaSelection {
  WeightedAdjacency fit;
  double lambda = 0.0;
  std::vector<double> lambdas;
  std::vector<double> bic;      // NaN for non-converged fits
  std::vector<bool> converged;
};

/// Fits every lambda and keeps the converged fit with the lowest BIC
/// (ties go to the smaller lambda). Throws when no fit converged.
LambdaSelection select_lambda_bic(const Eigen::MatrixXd& X,
                                  std::span<const double> lambdas,
                                  const NotearsOptions& opts = {},
                                  double tau = 0.1);

/// Structure-learning backends are pluggable; only NOTEARS-Lasso ships.
class DiscoveryBackend {
 public:
  virtual ~DiscoveryBackend() = default;
  virtual std::string_view name() const = 0;
  virtual WeightedAdjacency discover(const Eigen::MatrixXd& X) const = 0;
};

class NotearsLassoBackend final : public DiscoveryBackend {
 public:
  explicit NotearsLassoBackend(std::vector<double> lambdas,
                               NotearsOptions opts = {}, double tau = 0.1)
      : lambdas_(std::move(lambdas)), opts_(opts), tau_(tau) {}

  std::string_view name() const override { return "notears-lasso"; }
  WeightedAdjacency discover(const Eigen::MatrixXd& X) const override {
    return select_lambda_bic(X, lambdas_, opts_, tau_).fit;
  }

 private:
  std::vector<double> lambdas_;
  NotearsOptions opts_;
  double tau_;
};

}  // namespace cforge
