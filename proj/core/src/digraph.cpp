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

#include "causalforge/digraph.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <string>

#include "causalforge/common.hpp"

namespace cforge {

void Digraph::add_edge(std::size_t from, std::size_t to, double weight) {
  if (from >= nodes_ || to >= nodes_) throw ContractViolation("Digraph: node out of range");
  if (from == to) throw ContractViolation("Digraph: self loop");
  present_[from * nodes_ + to] = 1;
  weight_[from * nodes_ + to] = weight;
}

void Digraph::remove_edge(std::size_t from, std::size_t to) {
  if (from >= nodes_ || to >= nodes_) throw ContractViolation("Digraph: node out of range");
  present_[from * nodes_ + to] = 0;
  weight_[from * nodes_ + to] = 0.0;
}

std::size_t Digraph::edge_count() const {
  std::size_t count = 0;
  for (char p : present_) count += p != 0;
  return count;
}

std::vector<std::pair<std::size_t, std::size_t>> Digraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < nodes_; ++i) {
    for (std::size_t j = 0; j < nodes_; ++j) {
      if (has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> Digraph::topological_order() const {
  std::vector<std::size_t> indegree(nodes_, 0);
  for (std::size_t i = 0; i < nodes_; ++i) {
    for (std::size_t j = 0; j < nodes_; ++j) indegree[j] += has_edge(i, j);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t j = 0; j < nodes_; ++j) {
    if (indegree[j] == 0) ready.push(j);
  }
  std::vector<std::size_t> order;
  order.reserve(nodes_);
  while (!ready.empty()) {
    const std::size_t u = ready.top();
    ready.pop();
    order.push_back(u);
    for (std::size_t v = 0; v < nodes_; ++v) {
      if (has_edge(u, v) && --indegree[v] == 0) ready.push(v);
    }
  }
  if (order.size() != nodes_) return std::nullopt;
  return order;
}

bool Digraph::reaches(std::size_t from, std::size_t to) const {
  if (from >= nodes_ || to >= nodes_) throw ContractViolation("Digraph: node out of range");
  std::vector<char> seen(nodes_, 0);
  std::vector<std::size_t> stack{from};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < nodes_; ++v) {
      if (!has_edge(u, v) || seen[v]) continue;
      if (v == to) return true;
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  return false;
}

Digraph graph_from_adjacency(const Eigen::MatrixXd& adjacency, double tau) {
  if (adjacency.rows() != adjacency.cols()) {
    throw ContractViolation("graph_from_adjacency: not square");
  }
  const auto d = static_cast<std::size_t>(adjacency.rows());
  Digraph g(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double w = adjacency(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (i != j && std::abs(w) > tau) g.add_edge(i, j, w);
    }
  }
  return g;
}

DagExtraction threshold_to_dag(const Eigen::MatrixXd& w, double tau) {
  DagExtraction out{graph_from_adjacency(w, tau), 0};
  Digraph& g = out.graph;
  while (!g.is_acyclic()) {
    // An edge i -> j lies on a cycle iff j reaches i.
    bool found = false;
    std::pair<std::size_t, std::size_t> weakest;
    double weakest_abs = 0.0;
    for (const auto& [i, j] : g.edges()) {
      if (!g.reaches(j, i)) continue;
      const double a = std::abs(g.weight(i, j));
      if (!found || a < weakest_abs) {
        found = true;
        weakest = {i, j};
        weakest_abs = a;
      }
    }
    g.remove_edge(weakest.first, weakest.second);
    ++out.removed_edges;
  }
  return out;
}

std::string_view to_string(CausalRole role) {
  switch (role) {
    case CausalRole::kDirect:
      return "direct";
    case CausalRole::kIndirect:
      return "indirect";
    case CausalRole::kOther:
      return "other";
  }
  return "other";
}

CausalRole parse_role(std::string_view text) {
  if (text == "direct") return CausalRole::kDirect;
  if (text == "indirect") return CausalRole::kIndirect;
  if (text == "other") return CausalRole::kOther;
  throw ParseError("unknown causal role '" + std::string(text) + "'", 0, 0);
}

std::vector<CausalRole> assign_roles(const Digraph& graph, std::size_t target) {
  const std::size_t d = graph.node_count();
  if (target >= d) throw ContractViolation("assign_roles: target out of range");
  std::vector<char> reaches_target(d, 0);
  for (std::size_t k = 0; k < d; ++k) {
    if (k != target) reaches_target[k] = graph.reaches(k, target);
  }
  std::vector<CausalRole> roles;
  roles.reserve(d - 1);
  for (std::size_t f = 0; f < d; ++f) {
    if (f == target) continue;
    if (graph.has_edge(f, target)) {
      roles.push_back(CausalRole::kDirect);
      continue;
    }
    bool indirect = false;
    for (std::size_t k = 0; k < d && !indirect; ++k) {
      indirect = k != target && graph.has_edge(f, k) && reaches_target[k];
    }
    roles.push_back(indirect ? CausalRole::kIndirect : CausalRole::kOther);
  }
  return roles;
}

int shd(const Digraph& a, const Digraph& b) {
  if (a.node_count() != b.node_count()) throw ContractViolation("shd: node sets differ");
  const std::size_t d = a.node_count();
  int distance = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (a.has_edge(i, j) != b.has_edge(i, j) || a.has_edge(j, i) != b.has_edge(j, i)) {
        ++distance;
      }
    }
  }
  return distance;
}

double edge_f1(const Digraph& estimate, const Digraph& truth) {
  if (estimate.node_count() != truth.node_count()) {
    throw ContractViolation("edge_f1: node sets differ");
  }
  const auto n_est = static_cast<double>(estimate.edge_count());
  const auto n_true = static_cast<double>(truth.edge_count());
  if (n_est == 0.0 && n_true == 0.0) return 1.0;
  double tp = 0.0;
  for (const auto& [i, j] : estimate.edges()) tp += truth.has_edge(i, j);
  if (tp == 0.0) return 0.0;
  const double precision = tp / n_est;
  const double recall = tp / n_true;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace cforge
