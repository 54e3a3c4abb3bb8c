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

#include <Eigen/Dense>

namespace cforge {

/// exp(A) by scaling and squaring: A is scaled by 2^-s until its 1-norm is at
/// most 1/8, a degree-10 Taylor polynomial is evaluated Paterson-Stockmeyer style, and the
/// result is squared s times.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

struct Acyclicity {
  double value = 0.0;        // tr(exp(W o W)) - d
  Eigen::MatrixXd gradient;  // exp(W o W)^T o 2W
};

/// Smooth acyclicity measure; zero exactly when the weighted digraph is a DAG.
Acyclicity acyclicity_h(const Eigen::MatrixXd& w);

}  // namespace cforge
