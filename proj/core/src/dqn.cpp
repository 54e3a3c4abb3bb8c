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

#include "causalforge/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cforge {

int replay_capacity(int d, int ceiling) {
  return std::max(1, std::min({10000, 100 * std::max(d, 0), ceiling}));
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ContractViolation("ReplayBuffer: capacity must be positive");
  items_.reserve(std::min<std::size_t>(capacity, 4096));
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= items_.size()) throw ContractViolation("ReplayBuffer::at: index out of range");
  return items_[(head_ + i) % items_.size()];
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t count, Rng& rng) const {
  if (count > items_.size()) throw ContractViolation("ReplayBuffer::sample: not enough transitions");
  std::vector<std::size_t> idx(items_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<const Transition*> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t pick = k + uniform_index(rng, idx.size() - k);
    std::swap(idx[k], idx[pick]);
    out.push_back(&items_[idx[k]]);
  }
  return out;
}

double epsilon_schedule(long step, double start, double end, long decay_steps) {
  if (step < 0) throw ContractViolation("epsilon_schedule: negative step");
  if (decay_steps <= 0 || step >= decay_steps) return end;
  const double frac = static_cast<double>(step) / static_cast<double>(decay_steps);
  return start + (end - start) * frac;
}

int greedy_action(std::span<const float> q) {
  if (q.empty()) throw ContractViolation("greedy_action: no actions");
  return static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
}

int select_action(const QNetwork& net, const Eigen::VectorXf& state, double eps, Rng& rng) {
  if (eps < 0.0 || eps > 1.0) throw ContractViolation("select_action: eps outside [0, 1]");
  if (uniform01(rng) < eps) {
    return static_cast<int>(uniform_index(rng, static_cast<std::size_t>(net.output_size())));
  }
  const Eigen::MatrixXf q = net.predict(state.transpose());
  return greedy_action(std::span<const float>(q.data(), static_cast<std::size_t>(q.size())));
}

double td_train_step(QNetwork& net, const QNetwork& target, std::span<const Transition* const> batch,
                     double gamma, Rng& dropout_rng) {
  if (batch.empty()) throw ContractViolation("td_train_step: empty batch");
  const auto n = static_cast<Eigen::Index>(batch.size());
  const int width = net.input_size();
  Eigen::MatrixXf states(n, width), next(n, width);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Transition& t = *batch[static_cast<std::size_t>(i)];
    if (t.state.size() != width || t.next_state.size() != width ||
        t.action < 0 || t.action >= net.output_size()) {
      throw ContractViolation("td_train_step: malformed transition");
    }
    states.row(i) = t.state.transpose();
    next.row(i) = t.next_state.transpose();
  }
  const Eigen::MatrixXf next_q = target.predict(next);
  const Eigen::MatrixXf q = net.forward_train(states, &dropout_rng);
  Eigen::MatrixXf grad = Eigen::MatrixXf::Zero(q.rows(), q.cols());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Transition& t = *batch[static_cast<std::size_t>(i)];
    double y = t.reward;
    if (!t.terminal) y += gamma * static_cast<double>(next_q.row(i).maxCoeff());
    const double diff = static_cast<double>(q(i, t.action)) - y;
    const double a = std::abs(diff);
    loss += a <= kHuberDelta ? 0.5 * diff * diff : kHuberDelta * (a - 0.5 * kHuberDelta);
    const double g = a <= kHuberDelta ? diff : kHuberDelta * (diff > 0 ? 1.0 : -1.0);
    grad(i, t.action) = static_cast<float>(g / static_cast<double>(n));
  }
  net.zero_grad();
  net.backward(grad);
  net.adam_step();
  return loss / static_cast<double>(n);
}

DqnAgent::DqnAgent(int state_size, int action_count, std::size_t buffer_capacity,
                   const AgentConfig& config, std::uint64_t seed)
    : config_(config),
      net_(state_size, action_count, config.network, seed),
      target_(net_),
      buffer_(buffer_capacity) {}

double DqnAgent::epsilon() const {
  return epsilon_schedule(decisions_, config_.epsilon_start, config_.epsilon_end,
                          config_.epsilon_decay_steps);
}

int DqnAgent::act(const Eigen::VectorXf& state, Rng& rng) {
  const double eps = epsilon();
  ++decisions_;
  return select_action(net_, state, eps, rng);
}

int DqnAgent::greedy(const Eigen::VectorXf& state) const {
  const Eigen::MatrixXf q = net_.predict(state.transpose());
  return greedy_action(std::span<const float>(q.data(), static_cast<std::size_t>(q.size())));
}

std::optional<double> DqnAgent::train(Rng& rng) {
  const auto batch_size = static_cast<std::size_t>(config_.batch_size);
  if (buffer_.size() < batch_size) return std::nullopt;
  const auto batch = buffer_.sample(batch_size, rng);
  const double loss = td_train_step(net_, target_, batch, config_.gamma, rng);
  ++train_steps_;
  if (config_.target_sync_every > 0 && train_steps_ % config_.target_sync_every == 0) {
    target_.copy_weights_from(net_);
  }
  return loss;
}

}  // namespace cforge
