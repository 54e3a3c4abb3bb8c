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

#include "causalforge/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "causalforge/common.hpp"
#include "causalforge/metrics.hpp"

namespace cforge {

class RandomForest::Builder {
 public:
  Builder(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, TaskKind task, int class_count,
          const ForestConfig& config, Eigen::VectorXd& importances)
      : X_(X), y_(y), classify_(task == TaskKind::kClassification),
        class_count_(class_count), config_(config), importances_(importances) {
    const auto p = static_cast<int>(X.cols());
    mtry_ = config.features_per_split > 0
                ? std::min(config.features_per_split, p)
                : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p))));
    mtry_ = std::max(mtry_, 1);
  }

  Tree build(std::vector<Eigen::Index> rows, Rng& rng) {
    Tree tree;
    grow(tree, rows, 0, rng);
    return tree;
  }

 private:
  struct Stats {
    std::vector<double> counts;  // classification
    double sum = 0.0;            // regression
    double sum_sq = 0.0;
    double n = 0.0;

    void add(double v, bool classify) {
      n += 1.0;
      if (classify) {
        counts[static_cast<std::size_t>(v)] += 1.0;
      } else {
        sum += v;
        sum_sq += v * v;
      }
    }
    void remove(double v, bool classify) {
      n -= 1.0;
      if (classify) {
        counts[static_cast<std::size_t>(v)] -= 1.0;
      } else {
        sum -= v;
        sum_sq -= v * v;
      }
    }
    // Impurity times sample count: n * Gini, or the sum of squared errors.
    double weighted_impurity(bool classify) const {
      if (n <= 0.0) return 0.0;
      if (classify) {
        double s = 0.0;
        for (double c : counts) s += c * c;
        return n - s / n;
      }
      return std::max(sum_sq - sum * sum / n, 0.0);
    }
  };

  Stats empty_stats() const {
    Stats s;
    if (classify_) s.counts.assign(static_cast<std::size_t>(class_count_), 0.0);
    return s;
  }

  int make_leaf(Tree& tree, const Stats& stats) {
    Node node;
    node.leaf = static_cast<int>(tree.leaf_values.size());
    if (classify_) {
      for (double c : stats.counts) tree.leaf_values.push_back(stats.n > 0 ? c / stats.n : 0.0);
    } else {
      tree.leaf_values.push_back(stats.n > 0 ? stats.sum / stats.n : 0.0);
    }
    tree.nodes.push_back(node);
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  int grow(Tree& tree, std::vector<Eigen::Index>& rows, int depth, Rng& rng) {
    Stats parent = empty_stats();
    for (Eigen::Index r : rows) parent.add(y_(r), classify_);
    const double parent_impurity = parent.weighted_impurity(classify_);
    if (depth >= config_.max_depth || static_cast<int>(rows.size()) < config_.min_split ||
        parent_impurity <= 1e-12) {
      return make_leaf(tree, parent);
    }

    // Partial Fisher-Yates: the first mtry_ entries are the candidate features.
    const auto p = static_cast<int>(X_.cols());
    std::vector<int> features(static_cast<std::size_t>(p));
    std::iota(features.begin(), features.end(), 0);
    for (int k = 0; k < mtry_; ++k) {
      const auto pick = k + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(p - k)));
      std::swap(features[static_cast<std::size_t>(k)], features[static_cast<std::size_t>(pick)]);
    }
    features.resize(static_cast<std::size_t>(mtry_));
    std::sort(features.begin(), features.end());

    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::pair<double, double>> sorted(rows.size());
    for (int f : features) {
      for (std::size_t i = 0; i < rows.size(); ++i) sorted[i] = {X_(rows[i], f), y_(rows[i])};
      std::sort(sorted.begin(), sorted.end());
      if (sorted.front().first == sorted.back().first) continue;
      Stats left = empty_stats();
      Stats right = parent;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        left.add(sorted[i].second, classify_);
        right.remove(sorted[i].second, classify_);
        if (sorted[i].first == sorted[i + 1].first) continue;
        const double gain = parent_impurity - left.weighted_impurity(classify_) -
                            right.weighted_impurity(classify_);
        // Features are visited in ascending order and thresholds ascend, so a
        // strict comparison keeps the lower index / threshold on ties.
        if (gain > best_gain + 1e-12 * std::max(1.0, parent_impurity)) {
          best_gain = gain;
          best_feature = f;
          best_threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
          if (best_threshold >= sorted[i + 1].first) best_threshold = sorted[i].first;
        }
      }
    }
    if (best_feature < 0) return make_leaf(tree, parent);

    importances_(best_feature) += best_gain;
    std::vector<Eigen::Index> left_rows, right_rows;
    for (Eigen::Index r : rows) {
      (X_(r, best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(Node{best_feature, best_threshold, -1, -1, -1});
    const int l = grow(tree, left_rows, depth + 1, rng);
    const int r = grow(tree, right_rows, depth + 1, rng);
    tree.nodes[static_cast<std::size_t>(index)].left = l;
    tree.nodes[static_cast<std::size_t>(index)].right = r;
    return index;
  }

  const Eigen::MatrixXd& X_;
  const Eigen::VectorXd& y_;
  bool classify_;
  int class_count_;
  ForestConfig config_;
  Eigen::VectorXd& importances_;
  int mtry_ = 1;
};

void RandomForest::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, TaskKind task,
                       int class_count, const ForestConfig& config, std::uint64_t seed) {
  if (X.rows() < 2) throw ContractViolation("RandomForest::fit: need at least 2 rows");
  if (X.cols() < 1) throw ContractViolation("RandomForest::fit: need at least 1 feature");
  if (X.rows() != y.size()) throw ContractViolation("RandomForest::fit: row mismatch");
  if (config.n_trees < 1 || config.max_depth < 0 || config.min_split < 2) {
    throw ContractViolation("RandomForest::fit: invalid config");
  }
  if (task == TaskKind::kClassification) {
    if (class_count < 1) throw ContractViolation("RandomForest::fit: class_count must be positive");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y(i) < 0 || y(i) >= class_count || y(i) != std::floor(y(i))) {
        throw ContractViolation("RandomForest::fit: label out of range");
      }
    }
  }
  task_ = task;
  class_count_ = task == TaskKind::kClassification ? class_count : 1;
  feature_count_ = X.cols();
  trees_.clear();
  importances_ = Eigen::VectorXd::Zero(X.cols());
  Builder builder(X, y, task, class_count_, config, importances_);
  const auto n = static_cast<std::size_t>(X.rows());
  for (int t = 0; t < config.n_trees; ++t) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
    std::vector<Eigen::Index> rows(n);
    if (config.bootstrap) {
      for (auto& r : rows) r = static_cast<Eigen::Index>(uniform_index(rng, n));
    } else {
      std::iota(rows.begin(), rows.end(), Eigen::Index{0});
    }
    trees_.push_back(builder.build(std::move(rows), rng));
  }
  const double total = importances_.sum();
  if (total > 0.0) importances_ /= total;
}

Eigen::VectorXd RandomForest::predict(const Eigen::MatrixXd& X) const {
  if (trees_.empty()) throw ContractViolation("RandomForest::predict: model not fitted");
  if (X.cols() != feature_count_) throw ContractViolation("RandomForest::predict: column mismatch");
  Eigen::VectorXd out(X.rows());
  std::vector<double> acc(static_cast<std::size_t>(class_count_));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (const Tree& tree : trees_) {
      int k = 0;
      while (tree.nodes[static_cast<std::size_t>(k)].feature >= 0) {
        const Node& node = tree.nodes[static_cast<std::size_t>(k)];
        k = X(i, node.feature) <= node.threshold ? node.left : node.right;
      }
      const auto leaf = static_cast<std::size_t>(tree.nodes[static_cast<std::size_t>(k)].leaf);
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += tree.leaf_values[leaf + c];
    }
    if (task_ == TaskKind::kClassification) {
      out(i) = static_cast<double>(std::max_element(acc.begin(), acc.end()) - acc.begin());
    } else {
      out(i) = acc[0] / static_cast<double>(trees_.size());
    }
  }
  return out;
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, std::span<const Eigen::Index> idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

Eigen::VectorXd take(const Eigen::VectorXd& v, std::span<const Eigen::Index> idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(idx[i]);
  return out;
}

}  // namespace

namespace {

double score_predictions(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth, TaskKind task) {
  if (task == TaskKind::kClassification) {
    std::vector<int> p(static_cast<std::size_t>(pred.size())), t(p.size());
    for (Eigen::Index i = 0; i < pred.size(); ++i) {
      p[static_cast<std::size_t>(i)] = static_cast<int>(pred(i));
      t[static_cast<std::size_t>(i)] = static_cast<int>(truth(i));
    }
    return macro_f1(p, t);
  }
  return one_minus_rae(std::span<const double>(pred.data(), static_cast<std::size_t>(pred.size())),
                       std::span<const double>(truth.data(), static_cast<std::size_t>(truth.size())));
}

void check_indices(std::span<const Eigen::Index> idx, Eigen::Index rows) {
  for (Eigen::Index i : idx) {
    if (i < 0 || i >= rows) throw ContractViolation("evaluate: index out of range");
  }
}

}  // namespace

ForestEvaluation evaluate_detailed(const Eigen::MatrixXd& features, const Eigen::VectorXd& y,
                                   TaskKind task, int class_count,
                                   std::span<const Eigen::Index> train_idx,
                                   std::span<const Eigen::Index> val_idx,
                                   const ForestConfig& config, std::uint64_t seed,
                                   bool with_train_score) {
  if (train_idx.empty() || val_idx.empty()) throw ContractViolation("evaluate: empty split");
  check_indices(train_idx, features.rows());
  check_indices(val_idx, features.rows());
  RandomForest forest;
  const Eigen::MatrixXd train_x = take_rows(features, train_idx);
  const Eigen::VectorXd train_y = take(y, train_idx);
  forest.fit(train_x, train_y, task, class_count, config, seed);
  ForestEvaluation out;
  out.score = score_predictions(forest.predict(take_rows(features, val_idx)), take(y, val_idx), task);
  if (with_train_score) out.train_score = score_predictions(forest.predict(train_x), train_y, task);
  out.importances = forest.importances();
  return out;
}

double evaluate(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, TaskKind task,
                int class_count, std::span<const Eigen::Index> train_idx,
                std::span<const Eigen::Index> val_idx, const ForestConfig& config,
                std::uint64_t seed) {
  return evaluate_detailed(features, y, task, class_count, train_idx, val_idx, config, seed, false)
      .score;
}

double cross_validate(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, TaskKind task,
                      int class_count, const SplitPlan& plan, const ForestConfig& config,
                      std::uint64_t seed) {
  if (plan.folds.empty()) throw ContractViolation("cross_validate: plan has no folds");
  double total = 0.0;
  for (std::size_t k = 0; k < plan.folds.size(); ++k) {
    total += evaluate(features, y, task, class_count, plan.folds[k].first, plan.folds[k].second,
                      config, mix_seed(seed, k));
  }
  return total / static_cast<double>(plan.folds.size());
}

double cross_validate(const Dataset& data, const ForestConfig& config, std::uint64_t seed,
                      int folds) {
  const SplitPlan plan = split_stratified(data, 0.2, folds, seed);
  return cross_validate(data.X, data.y, data.task, data.class_count, plan, config, seed);
}

}  // namespace cforge
