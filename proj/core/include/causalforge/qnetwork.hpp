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

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/common.hpp"

namespace cforge {

struct QNetworkOptions {
  std::vector<int> hidden = {512, 256, 128};
  double dropout = 0.1;         // after every hidden activation, training only
  bool batch_norm = true;       // after the first hidden linear layer
  double bn_momentum = 0.9;     // running = m * running + (1 - m) * batch
  double bn_epsilon = 1e-5;
  double learning_rate = 1e-3;  // Adam
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

/// Fully connected ReLU network mapping a batch of states (one per row) to
/// per-action values. Parameters live in one flat vector so optimizer state,
/// target copies and checkpoints are plain vector operations.
template <typename Scalar>
class QNetworkT {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

  QNetworkT() = default;
  QNetworkT(int input, int output, const QNetworkOptions& options, std::uint64_t seed);

  int input_size() const { return input_; }
  int output_size() const { return output_; }
  const QNetworkOptions& options() const { return options_; }

  /// Evaluation mode: running batch-norm statistics, no dropout. Pure.
  Matrix predict(const Matrix& states) const;

  /// Training mode: batch statistics and dropout drawn from `rng` (pass
  /// nullptr to disable dropout). Caches activations for backward().
  Matrix forward_train(const Matrix& states, Rng* rng);

  /// Accumulates parameter gradients for d(loss)/d(output) into grad().
  /// Must follow forward_train on the same batch.
  void backward(const Matrix& grad_output);

  void zero_grad() { grad_.setZero(); }
  /// One Adam update from grad().
  void adam_step();

  /// Copies weights and running statistics (not optimizer state).
  void copy_weights_from(const QNetworkT& other);

  Vector& parameters() { return params_; }
  const Vector& parameters() const { return params_; }
  const Vector& grad() const { return grad_; }
  long adam_steps() const { return adam_t_; }

  void save(std::ostream& out) const;
  void load(std::istream& in);

 private:
  struct Layer {
    int in = 0;
    int out = 0;
    Eigen::Index w = 0;  // offset of the in x out weight block (column-major)
    Eigen::Index b = 0;  // offset of the bias
  };

  Eigen::Map<Matrix> weight(Vector& v, const Layer& l) const {
    return Eigen::Map<Matrix>(v.data() + l.w, l.in, l.out);
  }
  Eigen::Map<const Matrix> weight(const Vector& v, const Layer& l) const {
    return Eigen::Map<const Matrix>(v.data() + l.w, l.in, l.out);
  }
  Eigen::Map<RowVector> row(Vector& v, Eigen::Index offset, int size) const {
    return Eigen::Map<RowVector>(v.data() + offset, size);
  }
  Eigen::Map<const RowVector> row(const Vector& v, Eigen::Index offset, int size) const {
    return Eigen::Map<const RowVector>(v.data() + offset, size);
  }

  int input_ = 0;
  int output_ = 0;
  QNetworkOptions options_;
  std::vector<Layer> layers_;
  Eigen::Index gamma_ = 0;  // batch-norm scale and shift offsets
  Eigen::Index beta_ = 0;
  Vector params_;
  Vector grad_;
  Vector adam_m_;
  Vector adam_v_;
  long adam_t_ = 0;
  RowVector running_mean_;
  RowVector running_var_;

  // forward_train cache
  std::vector<Matrix> inputs_;  // input to each linear layer
  std::vector<Matrix> masks_;   // ReLU * dropout scale, one per hidden layer
  Matrix bn_xhat_;
  RowVector bn_inv_std_;
};

extern template class QNetworkT<float>;
extern template class QNetworkT<double>;

using QNetwork = QNetworkT<float>;

}  // namespace cforge
