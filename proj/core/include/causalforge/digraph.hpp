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

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cforge {

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t nodes)
      : nodes_(nodes), weight_(nodes * nodes, 0.0), present_(nodes * nodes, 0) {}

  std::size_t node_count() const { return nodes_; }

  void add_edge(std::size_t from, std::size_t to, double weight = 1.0);
  void remove_edge(std::size_t from, std::size_t to);
  bool has_edge(std::size_t from, std::size_t to) const {
    return present_[from * nodes_ + to] != 0;
  }
  double weight(std::size_t from, std::size_t to) const {
    return weight_[from * nodes_ + to];
  }
  std::size_t edge_count() const;

  /// Edges in row-major (from, to) order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Kahn's algorithm with smallest-index-first; nullopt when cyclic.
  std::optional<std::vector<std::size_t>> topological_order() const;
  bool is_acyclic() const { return topological_order().has_value(); }

  /// Directed path from -> to of length >= 1.
  bool reaches(std::size_t from, std::size_t to) const;

  bool operator==(const Digraph&) const = default;

 private:
  std::size_t nodes_ = 0;
  std::vector<double> weight_;
  std::vector<char> present_;
};

Digraph graph_from_adjacency(const Eigen::MatrixXd& adjacency,
                             double tau = 0.0);

struct DagExtraction {
  Digraph graph;
  int removed_edges = 0;  // edges dropped by the cycle-breaking fallback
};

/// Keeps edges with |W_ij| > tau. Any surviving cycle is broken by removing
/// cycle edges in ascending |W_ij| order, so the result is always a DAG.
DagExtraction threshold_to_dag(const Eigen::MatrixXd& w, double tau);

enum class CausalRole { kDirect = 0, kIndirect = 1, kOther = 2 };
inline constexpr int kRoleCount = 3;

std::string_view to_string(CausalRole role);
CausalRole parse_role(std::string_view text);

/// Roles of every node except `target`, listed in node order.
std::vector<CausalRole> assign_roles(const Digraph& graph, std::size_t target);

/// Structural Hamming distance: one per node pair whose edge state differs.
int shd(const Digraph& a, const Digraph& b);

/// F1 over directed edge sets. Two empty graphs score 1.
double edge_f1(const Digraph& estimate, const Digraph& truth);

}  // namespace cforge
