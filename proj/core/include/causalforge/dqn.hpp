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
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/common.hpp"
#include "causalforge/qnetwork.hpp"

namespace cforge {

struct Transition {
  Eigen::VectorXf state;
  int action = 0;
  float reward = 0.0f;
  Eigen::VectorXf next_state;
  bool terminal = false;
};

/// min(10000, 100 d), never above `ceiling`.
int replay_capacity(int d, int ceiling = 50000);

/// Fixed-capacity FIFO ring of transitions.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  /// i-th oldest stored transition.
  const Transition& at(std::size_t i) const;
  /// `count` distinct transitions drawn uniformly (count <= size()).
  std::vector<const Transition*> sample(std::size_t count, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // index of the oldest item once full
  std::vector<Transition> items_;
};

/// Linear decay from `start` to `end` over [0, decay_steps], then constant.
double epsilon_schedule(long step, double start = 0.95, double end = 0.1, long decay_steps = 1000);

/// Greedy action with ties to the lowest id.
int greedy_action(std::span<const float> q);

/// With probability eps a uniform action, else the greedy one.
int select_action(const QNetwork& net, const Eigen::VectorXf& state, double eps, Rng& rng);

inline constexpr double kHuberDelta = 1.0;

/// Huber loss (delta 1) against r + gamma * max_a' Q_target(s', a') (just r on
/// terminal transitions) followed by one Adam step on `net`. Returns the mean
/// batch loss measured before the step.
double td_train_step(QNetwork& net, const QNetwork& target, std::span<const Transition* const> batch,
                     double gamma, Rng& dropout_rng);

struct AgentConfig {
  QNetworkOptions network;
  int batch_size = 256;
  double gamma = 0.99;
  long target_sync_every = 1000;  // training steps between hard target copies
  double epsilon_start = 0.95;
  double epsilon_end = 0.1;
  long epsilon_decay_steps = 1000;
};

/// One Q-network with its target copy, replay buffer and exploration counter.
class DqnAgent {
 public:
  DqnAgent(int state_size, int action_count, std::size_t buffer_capacity, const AgentConfig& config,
           std::uint64_t seed);

  /// Epsilon-greedy choice; advances the exploration schedule.
  int act(const Eigen::VectorXf& state, Rng& rng);
  int greedy(const Eigen::VectorXf& state) const;
  void remember(Transition t) { buffer_.push(std::move(t)); }

  /// One TD update on a sampled batch; nullopt while the buffer holds fewer
  /// than batch_size transitions.
  std::optional<double> train(Rng& rng);

  double epsilon() const;
  long decisions() const { return decisions_; }
  long train_steps() const { return train_steps_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  QNetwork& network() { return net_; }
  const QNetwork& network() const { return net_; }
  const QNetwork& target_network() const { return target_; }

 private:
  AgentConfig config_;
  QNetwork net_;
  QNetwork target_;
  ReplayBuffer buffer_;
  long decisions_ = 0;
  long train_steps_ = 0;
};

}  // namespace cforge
