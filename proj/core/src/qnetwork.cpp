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

#include "causalforge/qnetwork.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

namespace cforge {
namespace {

constexpr char kCheckpointMagic[4] = {'C', 'F', 'Q', 'N'};
constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error("checkpoint: truncated file");
  return value;
}

template <typename Derived>
void write_block(std::ostream& out, const Eigen::DenseBase<Derived>& m) {
  out.write(reinterpret_cast<const char*>(m.derived().data()),
            static_cast<std::streamsize>(m.size() * sizeof(typename Derived::Scalar)));
}

template <typename Derived>
void read_block(std::istream& in, Eigen::DenseBase<Derived>& m) {
  in.read(reinterpret_cast<char*>(m.derived().data()),
          static_cast<std::streamsize>(m.size() * sizeof(typename Derived::Scalar)));
  if (!in) throw Error("checkpoint: truncated file");
}

}  // namespace

template <typename Scalar>
QNetworkT<Scalar>::QNetworkT(int input, int output, const QNetworkOptions& options,
                             std::uint64_t seed)
    : input_(input), output_(output), options_(options) {
  if (input < 1 || output < 1) throw ContractViolation("QNetwork: sizes must be positive");
  for (int h : options.hidden) {
    if (h < 1) throw ContractViolation("QNetwork: hidden widths must be positive");
  }
  if (options.dropout < 0.0 || options.dropout >= 1.0) {
    throw ContractViolation("QNetwork: dropout must be in [0, 1)");
  }
  Eigen::Index offset = 0;
  int in = input;
  std::vector<int> widths = options.hidden;
  widths.push_back(output);
  for (int out : widths) {
    Layer l{in, out, offset, offset + static_cast<Eigen::Index>(in) * out};
    offset = l.b + out;
    layers_.push_back(l);
    in = out;
  }
  const bool bn = options.batch_norm && !options.hidden.empty();
  const int bn_width = bn ? options.hidden.front() : 0;
  gamma_ = offset;
  beta_ = offset + bn_width;
  offset = beta_ + bn_width;

  params_ = Vector::Zero(offset);
  grad_ = Vector::Zero(offset);
  adam_m_ = Vector::Zero(offset);
  adam_v_ = Vector::Zero(offset);
  running_mean_ = RowVector::Zero(bn_width);
  running_var_ = RowVector::Ones(bn_width);

  Rng rng = make_rng(seed);
  for (const Layer& l : layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(l.in) * l.out; ++k) {
      params_(l.w + k) = static_cast<Scalar>((2.0 * uniform01(rng) - 1.0) * limit);
    }
  }
  if (bn) row(params_, gamma_, bn_width).setOnes();
}

template <typename Scalar>
typename QNetworkT<Scalar>::Matrix QNetworkT<Scalar>::predict(const Matrix& states) const {
  if (states.cols() != input_) throw ContractViolation("QNetwork::predict: input width mismatch");
  Matrix h = states;
  const std::size_t hidden = layers_.size() - 1;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    Matrix z = h * weight(params_, l);
    z.rowwise() += row(params_, l.b, l.out);
    if (k == hidden) return z;
    if (k == 0 && running_mean_.size() > 0) {
      const RowVector scale =
          row(params_, gamma_, l.out).array() /
          (running_var_.array() + static_cast<Scalar>(options_.bn_epsilon)).sqrt();
      z.rowwise() -= running_mean_;
      z.array().rowwise() *= scale.array();
      z.rowwise() += row(params_, beta_, l.out);
    }
    h = z.cwiseMax(Scalar(0));
  }
  return h;
}

template <typename Scalar>
typename QNetworkT<Scalar>::Matrix QNetworkT<Scalar>::forward_train(const Matrix& states, Rng* rng) {
  if (states.cols() != input_) throw ContractViolation("QNetwork::forward: input width mismatch");
  const Eigen::Index n = states.rows();
  const std::size_t hidden = layers_.size() - 1;
  inputs_.assign(layers_.size(), Matrix());
  masks_.assign(hidden, Matrix());
  Matrix h = states;
  const auto keep_scale = static_cast<Scalar>(1.0 / (1.0 - options_.dropout));
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    inputs_[k] = h;
    Matrix z = h * weight(params_, l);
    z.rowwise() += row(params_, l.b, l.out);
    if (k == hidden) return z;
    if (k == 0 && running_mean_.size() > 0) {
      const RowVector mean = z.colwise().mean();
      z.rowwise() -= mean;
      const RowVector var = z.array().square().colwise().mean();
      bn_inv_std_ = (var.array() + static_cast<Scalar>(options_.bn_epsilon)).rsqrt();
      z.array().rowwise() *= bn_inv_std_.array();
      bn_xhat_ = z;
      z.array().rowwise() *= row(params_, gamma_, l.out).array();
      z.rowwise() += row(params_, beta_, l.out);
      const auto m = static_cast<Scalar>(options_.bn_momentum);
      running_mean_ = m * running_mean_ + (Scalar(1) - m) * mean;
      running_var_ = m * running_var_ + (Scalar(1) - m) * var;
    }
    Matrix mask(n, l.out);
    for (Eigen::Index j = 0; j < l.out; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        Scalar v = z(i, j) > Scalar(0) ? Scalar(1) : Scalar(0);
        if (rng != nullptr && options_.dropout > 0.0) {
          v = uniform01(*rng) < options_.dropout ? Scalar(0) : v * keep_scale;
        }
        mask(i, j) = v;
      }
    }
    h = z.cwiseProduct(mask);
    masks_[k] = std::move(mask);
  }
  return h;
}

template <typename Scalar>
void QNetworkT<Scalar>::backward(const Matrix& grad_output) {
  if (inputs_.size() != layers_.size() || inputs_.back().rows() != grad_output.rows() ||
      grad_output.cols() != output_) {
    throw ContractViolation("QNetwork::backward: call forward_train on the same batch first");
  }
  const auto n = static_cast<Scalar>(grad_output.rows());
  Matrix g = grad_output;
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const Layer& l = layers_[k];
    if (k < layers_.size() - 1) {
      g = g.cwiseProduct(masks_[k]);
      if (k == 0 && running_mean_.size() > 0) {
        row(grad_, gamma_, l.out) += g.cwiseProduct(bn_xhat_).colwise().sum();
        row(grad_, beta_, l.out) += g.colwise().sum();
        Matrix dxhat = g;
        dxhat.array().rowwise() *= row(params_, gamma_, l.out).array();
        const RowVector sum_d = dxhat.colwise().sum();
        const RowVector sum_dx = dxhat.cwiseProduct(bn_xhat_).colwise().sum();
        Matrix dz = n * dxhat;
        dz.rowwise() -= sum_d;
        dz -= bn_xhat_ * sum_dx.asDiagonal();
        dz.array().rowwise() *= (bn_inv_std_.array() / n);
        g = std::move(dz);
      }
    }
    weight(grad_, l).noalias() += inputs_[k].transpose() * g;
    row(grad_, l.b, l.out) += g.colwise().sum();
    if (k > 0) g = g * weight(params_, l).transpose();
  }
}

template <typename Scalar>
void QNetworkT<Scalar>::adam_step() {
  ++adam_t_;
  const double b1 = options_.adam_beta1;
  const double b2 = options_.adam_beta2;
  const auto c1 = static_cast<Scalar>(1.0 - std::pow(b1, static_cast<double>(adam_t_)));
  const auto c2 = static_cast<Scalar>(1.0 - std::pow(b2, static_cast<double>(adam_t_)));
  adam_m_ = static_cast<Scalar>(b1) * adam_m_ + static_cast<Scalar>(1.0 - b1) * grad_;
  adam_v_ = static_cast<Scalar>(b2) * adam_v_ + static_cast<Scalar>(1.0 - b2) * grad_.cwiseProduct(grad_);
  const auto lr = static_cast<Scalar>(options_.learning_rate);
  const auto eps = static_cast<Scalar>(options_.adam_epsilon);
  params_.array() -= lr * (adam_m_.array() / c1) / ((adam_v_.array() / c2).sqrt() + eps);
}

template <typename Scalar>
void QNetworkT<Scalar>::copy_weights_from(const QNetworkT& other) {
  if (other.params_.size() != params_.size()) {
    throw ContractViolation("QNetwork::copy_weights_from: shape mismatch");
  }
  params_ = other.params_;
  running_mean_ = other.running_mean_;
  running_var_ = other.running_var_;
}

template <typename Scalar>
void QNetworkT<Scalar>::save(std::ostream& out) const {
  out.write(kCheckpointMagic, 4);
  write_pod(out, kCheckpointVersion);
  write_pod(out, static_cast<std::uint32_t>(sizeof(Scalar)));
  write_pod(out, static_cast<std::int32_t>(input_));
  write_pod(out, static_cast<std::int32_t>(output_));
  write_pod(out, static_cast<std::int32_t>(options_.hidden.size()));
  for (int h : options_.hidden) write_pod(out, static_cast<std::int32_t>(h));
  write_pod(out, static_cast<std::int32_t>(running_mean_.size()));
  write_pod(out, static_cast<std::int64_t>(params_.size()));
  write_pod(out, static_cast<std::int64_t>(adam_t_));
  write_block(out, params_);
  write_block(out, adam_m_);
  write_block(out, adam_v_);
  write_block(out, running_mean_);
  write_block(out, running_var_);
  if (!out) throw Error("checkpoint: write failed");
}

template <typename Scalar>
void QNetworkT<Scalar>::load(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCheckpointMagic, 4) != 0) throw Error("checkpoint: bad magic");
  if (read_pod<std::uint32_t>(in) != kCheckpointVersion) throw Error("checkpoint: unsupported version");
  if (read_pod<std::uint32_t>(in) != sizeof(Scalar)) throw Error("checkpoint: scalar type mismatch");
  const auto input = read_pod<std::int32_t>(in);
  const auto output = read_pod<std::int32_t>(in);
  const auto hidden_count = read_pod<std::int32_t>(in);
  if (input != input_ || output != output_ ||
      hidden_count != static_cast<std::int32_t>(options_.hidden.size())) {
    throw Error("checkpoint: layer shape mismatch");
  }
  for (int h : options_.hidden) {
    if (read_pod<std::int32_t>(in) != h) throw Error("checkpoint: layer shape mismatch");
  }
  if (read_pod<std::int32_t>(in) != running_mean_.size() ||
      read_pod<std::int64_t>(in) != params_.size()) {
    throw Error("checkpoint: layer shape mismatch");
  }
  adam_t_ = static_cast<long>(read_pod<std::int64_t>(in));
  read_block(in, params_);
  read_block(in, adam_m_);
  read_block(in, adam_v_);
  read_block(in, running_mean_);
  read_block(in, running_var_);
}

template class QNetworkT<float>;
template class QNetworkT<double>;

}  // namespace cforge
