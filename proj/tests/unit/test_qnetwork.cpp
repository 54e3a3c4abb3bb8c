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

#include <sstream>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/qnetwork.hpp"

namespace cforge {
namespace {

using NetD = QNetworkT<double>;

// Scalar objective sum(G .* net(X)) so that backward(G) is its exact gradient.
double objective(NetD& net, const NetD::Matrix& X, const NetD::Matrix& G) {
  return net.forward_train(X, nullptr).cwiseProduct(G).sum();
}

void check_gradient(bool batch_norm) {
  QNetworkOptions opt;
  opt.hidden = {8};
  opt.dropout = 0.0;
  opt.batch_norm = batch_norm;
  NetD net(4, 2, opt, 17);
  Rng rng = make_rng(18);
  NetD::Matrix X(6, 4), G(6, 2);
  for (Eigen::Index k = 0; k < X.size(); ++k) X.data()[k] = normal01(rng);
  for (Eigen::Index k = 0; k < G.size(); ++k) G.data()[k] = normal01(rng);
  // Move biases off zero so no pre-activation sits on a ReLU kink.
  for (Eigen::Index k = 0; k < net.parameters().size(); ++k) net.parameters()(k) += 0.05 * normal01(rng);

  net.zero_grad();
  net.forward_train(X, nullptr);
  net.backward(G);
  const NetD::Vector analytic = net.grad();
  const double h = 1e-6;
  for (Eigen::Index k = 0; k < net.parameters().size(); ++k) {
    const double saved = net.parameters()(k);
    net.parameters()(k) = saved + h;
    const double up = objective(net, X, G);
    net.parameters()(k) = saved - h;
    const double down = objective(net, X, G);
    net.parameters()(k) = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double scale = std::max(1e-3, std::abs(numeric) + std::abs(analytic(k)));
    EXPECT_LT(std::abs(numeric - analytic(k)) / scale, 1e-4) << "parameter " << k;
  }
}

TEST(QNetwork, GradientMatchesFiniteDifferences) { check_gradient(false); }
TEST(QNetwork, GradientMatchesFiniteDifferencesWithBatchNorm) { check_gradient(true); }

TEST(QNetwork, DefaultShapes) {
  const QNetwork net(24, 3, QNetworkOptions{}, 1);
  // 24*512+512 + 512*256+256 + 256*128+128 + 128*3+3 + 2*512 (batch norm)
  EXPECT_EQ(net.parameters().size(), 24 * 512 + 512 + 512 * 256 + 256 + 256 * 128 + 128 + 128 * 3 + 3 + 1024);
  const Eigen::MatrixXf q = net.predict(Eigen::MatrixXf::Zero(5, 24));
  EXPECT_EQ(q.rows(), 5);
  EXPECT_EQ(q.cols(), 3);
  EXPECT_THROW(net.predict(Eigen::MatrixXf::Zero(1, 23)), ContractViolation);
}

TEST(QNetwork, XavierBounds) {
  QNetworkOptions opt;
  opt.hidden = {16};
  opt.batch_norm = false;
  const NetD net(10, 4, opt, 2);
  const double limit1 = std::sqrt(6.0 / 26.0);
  for (Eigen::Index k = 0; k < 160; ++k) EXPECT_LE(std::abs(net.parameters()(k)), limit1);
  for (Eigen::Index k = 160; k < 176; ++k) EXPECT_EQ(net.parameters()(k), 0.0);  // biases
}

TEST(QNetwork, AdamReducesQuadraticLoss) {
  QNetworkOptions opt;
  opt.hidden = {16};
  opt.dropout = 0.0;
  opt.batch_norm = false;
  opt.learning_rate = 1e-2;
  NetD net(3, 1, opt, 5);
  Rng rng = make_rng(6);
  NetD::Matrix X(32, 3);
  for (Eigen::Index k = 0; k < X.size(); ++k) X.data()[k] = normal01(rng);
  const NetD::Matrix target = X.col(0) * 2.0 - X.col(1);
  auto loss = [&] { return (net.predict(X) - target).squaredNorm() / 32.0; };
  const double before = loss();
  for (int it = 0; it < 300; ++it) {
    const NetD::Matrix out = net.forward_train(X, nullptr);
    net.zero_grad();
    net.backward((out - target) * (2.0 / 32.0));
    net.adam_step();
  }
  EXPECT_LT(loss(), 0.05 * before);
  EXPECT_EQ(net.adam_steps(), 300);
}

TEST(QNetwork, DropoutOnlyInTraining) {
  QNetworkOptions opt;
  opt.hidden = {32};
  opt.batch_norm = false;
  opt.dropout = 0.5;
  QNetwork net(4, 2, opt, 3);
  const Eigen::MatrixXf x = Eigen::MatrixXf::Ones(1, 4);
  EXPECT_EQ(net.predict(x), net.predict(x));
  Rng a = make_rng(1), b = make_rng(2);
  const Eigen::MatrixXf ta = net.forward_train(x, &a);
  const Eigen::MatrixXf tb = net.forward_train(x, &b);
  EXPECT_NE(ta, tb);
}

TEST(QNetwork, CheckpointRoundTrip) {
  QNetwork a(5, 3, QNetworkOptions{{16, 8}, 0.1, true}, 7);
  Rng rng = make_rng(8);
  Eigen::MatrixXf x(4, 5);
  for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = static_cast<float>(normal01(rng));
  a.forward_train(x, &rng);
  a.zero_grad();
  a.backward(Eigen::MatrixXf::Ones(4, 3));
  a.adam_step();
  std::stringstream buf;
  a.save(buf);
  QNetwork b(5, 3, QNetworkOptions{{16, 8}, 0.1, true}, 99);
  b.load(buf);
  EXPECT_EQ(a.predict(x), b.predict(x));
  EXPECT_EQ(b.adam_steps(), 1);

  QNetwork wrong(5, 3, QNetworkOptions{{16, 4}, 0.1, true}, 1);
  std::stringstream again;
  a.save(again);
  EXPECT_THROW(wrong.load(again), Error);
  std::stringstream garbage("nope");
  EXPECT_THROW(b.load(garbage), Error);
}

TEST(QNetwork, CopyWeights) {
  QNetwork a(3, 2, QNetworkOptions{{8}, 0.0, false}, 1);
  QNetwork b(3, 2, QNetworkOptions{{8}, 0.0, false}, 2);
  const Eigen::MatrixXf x = Eigen::MatrixXf::Random(4, 3);
  EXPECT_NE(a.predict(x), b.predict(x));
  b.copy_weights_from(a);
  EXPECT_EQ(a.predict(x), b.predict(x));
  QNetwork c(3, 4, QNetworkOptions{{8}, 0.0, false}, 2);
  EXPECT_THROW(c.copy_weights_from(a), ContractViolation);
}

}  // namespace
}  // namespace cforge
