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

#include "causalforge/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "causalforge/dqn.hpp"
#include "causalforge/ensemble.hpp"
#include "causalforge/forest.hpp"
#include "causalforge/grouping.hpp"
#include "causalforge/notears.hpp"
#include "causalforge/operators.hpp"
#include "causalforge/pruning.hpp"
#include "causalforge/split.hpp"
#include "causalforge/state.hpp"

namespace cforge {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kEarlyStop:
      return "early stop";
    case Termination::kFeatureCap:
      return "feature cap";
    case Termination::kMaxEpisodes:
      return "max episodes";
  }
  return "max episodes";
}

std::optional<Termination> check_termination(const LoopState& state, const RunConfig& cfg) {
  if (state.feature_cap > 0 && state.feature_count > state.feature_cap) {
    return Termination::kFeatureCap;
  }
  const auto patience = static_cast<std::size_t>(cfg.early_stop_patience);
  if (state.improvements.size() >= patience &&
      std::all_of(state.improvements.end() - static_cast<std::ptrdiff_t>(patience),
                  state.improvements.end(),
                  [&](double gain) { return gain < cfg.early_stop_delta; })) {
    return Termination::kEarlyStop;
  }
  if (state.episodes_completed >= cfg.max_episodes) return Termination::kMaxEpisodes;
  return std::nullopt;
}

StructureDiscovery discover_structure(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                      const RunConfig& cfg) {
  if (X.rows() != y.size()) throw ContractViolation("discover_structure: row mismatch");
  const Eigen::Index d = X.cols();
  Eigen::MatrixXd z(X.rows(), d + 1);
  z << X, y;
  const LambdaSelection selection = select_lambda_bic(z, cfg.lambda_grid, cfg.notears, cfg.tau);
  StructureDiscovery out;
  out.W = selection.fit.W;
  out.lambda = selection.lambda;
  out.lambdas = selection.lambdas;
  out.bic = selection.bic;
  DagExtraction dag = threshold_to_dag(out.W, cfg.tau);
  out.dag = std::move(dag.graph);
  out.removed_edges = dag.removed_edges;
  out.roles = assign_roles(out.dag, static_cast<std::size_t>(d));
  if (cfg.ensemble) {
    const EdgeProbabilities probs = bootstrap_ensemble(
        z, cfg.ensemble_size, out.lambda, mix_seed(cfg.seed, 0xE5), cfg.notears, cfg.tau);
    out.ensemble = true;
    out.edge_probability = probs.p;
    out.mean_confidence = probs.mean_confidence();
    out.roles = soft_roles(probs, static_cast<std::size_t>(d));
  }
  return out;
}

Eigen::MatrixXd apply_recipes(const Eigen::MatrixXd& X, std::span<const FeatureRecipe> recipes) {
  Eigen::MatrixXd out(X.rows(), X.cols() + static_cast<Eigen::Index>(recipes.size()));
  out.leftCols(X.cols()) = X;
  for (std::size_t k = 0; k < recipes.size(); ++k) {
    out.col(X.cols() + static_cast<Eigen::Index>(k)) = evaluate_recipe(recipes[k], X);
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

double population_variance(const Eigen::VectorXd& v) {
  if (v.size() == 0) return 0.0;
  return (v.array() - v.mean()).square().sum() / static_cast<double>(v.size());
}

struct Column {
  FeatureRecipe recipe;
  std::string key;
  CausalRole role = CausalRole::kOther;
  int depth = 0;
  double relevance = 0.0;  // MI with the target on training rows
  bool original = false;
};

// A decision waiting for the state that follows it.
struct Pending {
  Eigen::VectorXf state;
  int action = 0;
  float reward = 0.0f;
};

class Runner {
 public:
  Runner(const Dataset& ds, const RunConfig& cfg) : ds_(ds), cfg_(cfg) {}

  RunResult run() {
    setup();
    RunResult result;
    RunReport& report = report_;

    LoopState loop;
    loop.feature_cap = cap_;
    loop.feature_count = static_cast<int>(ds_.cols());
    std::vector<double> episode_bests;
    std::optional<Termination> stop = check_termination(loop, cfg_);
    for (int episode = 1; !stop; ++episode) {
      const StrategyWeights weights = adapt_weights(episode_bests, episode);
      const double best_before = best_score_;
      const EpisodeRecord rec = run_episode(episode, weights);
      episode_bests.push_back(rec.episode_best);
      report.episodes.push_back(rec);
      loop.episodes_completed = episode;
      loop.improvements.push_back(best_score_ - best_before);
      loop.feature_count = std::max(loop.feature_count, max_count_in_episode_);
      stop = check_termination(loop, cfg_);
    }
    report.termination = *stop;
    report.best_score = best_score_;
    report.episodes_to_95 = 0;
    for (const EpisodeRecord& e : report.episodes) {
      if (e.running_best >= 0.95 * best_score_) {
        report.episodes_to_95 = e.episode;
        break;
      }
    }

    result.recipes = best_recipes_;
    result.features = apply_recipes(ds_.X, best_recipes_);
    result.feature_names = ds_.feature_names;
    for (const FeatureRecipe& r : best_recipes_) result.feature_names.push_back(serialize_recipe(r));
    report.best_generated = static_cast<int>(best_recipes_.size());

    const SplitPlan cv_plan = split_stratified(ds_, cfg_.val_frac, cfg_.final_folds, cfg_.seed);
    const std::uint64_t cv_seed = mix_seed(cfg_.seed, 0xCF);
    report.baseline_cv = cross_validate(ds_.X, ds_.y, ds_.task, ds_.class_count, cv_plan,
                                        cfg_.final_forest, cv_seed);
    report.final_cv = best_recipes_.empty()
                          ? report.baseline_cv
                          : cross_validate(result.features, ds_.y, ds_.task, ds_.class_count,
                                           cv_plan, cfg_.final_forest, cv_seed);
    result.report = std::move(report_);
    return result;
  }

 private:
  void setup() {
    cfg_.validate();
    ds_.validate();
    const int d = static_cast<int>(ds_.cols());
    cap_ = cfg_.feature_cap > 0 ? cfg_.feature_cap : prune_cap(d);
    plan_ = split_stratified(ds_, cfg_.val_frac, 0, cfg_.seed);
    x_train_ = take_rows(ds_.X, plan_.train_idx);
    y_train_ = take(ds_.y, plan_.train_idx);
    train_codes_ = target_codes(y_train_, ds_.task);
    eval_seed_ = mix_seed(cfg_.seed, 0xE7);

    report_.task = ds_.task;
    report_.rows = static_cast<int>(ds_.rows());
    report_.original_count = d;
    report_.seed = cfg_.seed;
    build_groups();

    params_ = cfg_.reward_params;
    params_.alpha *= report_.mean_confidence;

    base_.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      Column c;
      c.recipe = FeatureRecipe::source_of(j);
      c.key = serialize_recipe(c.recipe);
      c.role = report_.groups.role_of[static_cast<std::size_t>(j)];
      c.relevance = report_.groups.mi_scores[static_cast<std::size_t>(j)];
      c.original = true;
      base_.push_back(std::move(c));
    }

    const ForestEvaluation baseline = evaluate_current(ds_.X);
    report_.baseline_score = baseline.score;
    baseline_train_score_ = baseline.train_score;
    baseline_importances_ = baseline.importances;
    best_score_ = baseline.score;

    Dataset summary_source = ds_.subset(plan_.train_idx);
    data_summary_ = summarize_dataset(summary_source);

    const int buffer = replay_capacity(d, cfg_.buffer_ceiling);
    const auto capacity = static_cast<std::size_t>(buffer);
    primary_.emplace(kPrimaryStateSize, kGroupCount, capacity, cfg_.agent, mix_seed(cfg_.seed, 11));
    operator_.emplace(kOperatorStateSize, kOperatorCount, capacity, cfg_.agent,
                      mix_seed(cfg_.seed, 12));
    secondary_.emplace(kSecondaryStateSize, kGroupCount, capacity, cfg_.agent,
                       mix_seed(cfg_.seed, 13));
    act_rng_ = make_rng(cfg_.seed, 1);
    sample_rng_ = make_rng(cfg_.seed, 2);
    train_rng_ = make_rng(cfg_.seed, 3);
  }

  void build_groups() {
    const int k_g = cfg_.group_cap > 0 ? cfg_.group_cap : default_group_cap(static_cast<int>(ds_.cols()));
    switch (cfg_.grouping) {
      case GroupingMode::kCausal:
        try {
          const StructureDiscovery found = discover_structure(x_train_, y_train_, cfg_);
          report_.groups = screen_groups(found.roles, x_train_, y_train_, ds_.task, k_g);
          report_.grouping_source = found.ensemble ? "ensemble" : "notears";
          report_.lambda = found.lambda;
          report_.mean_confidence = found.ensemble ? found.mean_confidence : 1.0;
          return;
        } catch (const Error& e) {
          report_.phase1_fallback = true;
          report_.phase1_message = e.what();
        }
        [[fallthrough]];
      case GroupingMode::kCorrelation:
        report_.groups = correlation_grouping(x_train_, y_train_, ds_.task, k_g);
        report_.grouping_source = "correlation";
        return;
      case GroupingMode::kRandom:
        report_.groups =
            random_grouping(x_train_, y_train_, ds_.task, k_g, mix_seed(cfg_.seed, 0x6E));
        report_.grouping_source = "random";
        return;
    }
  }

  ForestEvaluation evaluate_current(const Eigen::MatrixXd& features) const {
    return evaluate_detailed(features, ds_.y, ds_.task, ds_.class_count, plan_.train_idx,
                             plan_.val_idx, cfg_.step_forest, eval_seed_, true);
  }

  FeaturePools make_pools(const std::vector<Column>& cols) const {
    FeaturePools pools;
    pools.relevance.resize(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      pools.relevance[k] = cols[k].relevance;
      if (!cols[k].original) pools.members[static_cast<std::size_t>(cols[k].role)].push_back(static_cast<int>(k));
    }
    for (int g = 0; g < kRoleCount; ++g) {
      auto& members = pools.members[static_cast<std::size_t>(g)];
      const auto& screened = report_.groups.screened[static_cast<std::size_t>(g)];
      members.insert(members.begin(), screened.begin(), screened.end());
    }
    return pools;
  }

  Strategy choose_strategy(const StrategyWeights& weights) {
    switch (cfg_.exploration) {
      case ExplorationMode::kAdaptive:
        return sample_strategy(weights, sample_rng_);
      case ExplorationMode::kCausalOnly:
        return Strategy::kCausal;
      case ExplorationMode::kMiOnly:
        return Strategy::kMi;
    }
    return Strategy::kCausal;
  }

  static void complete(std::optional<Pending>& pending, DqnAgent& agent,
                       const Eigen::VectorXf& next, bool terminal) {
    if (!pending) return;
    Transition t;
    t.next_state = next;  // may alias pending->state
    t.state = std::move(pending->state);
    t.action = pending->action;
    t.reward = pending->reward;
    t.terminal = terminal;
    agent.remember(std::move(t));
    pending.reset();
  }

  void train_agents() {
    primary_->train(train_rng_);
    operator_->train(train_rng_);
    secondary_->train(train_rng_);
  }

  EpisodeRecord run_episode(int episode, const StrategyWeights& weights) {
    std::vector<Column> cols = base_;
    Eigen::MatrixXd current = ds_.X;
    std::unordered_set<std::string> keys;
    for (const Column& c : cols) keys.insert(c.key);
    ActionWindow window;

    StateContext ctx;
    ctx.data_summary = data_summary_;
    ctx.train_score = baseline_train_score_;
    ctx.val_score = report_.baseline_score;
    ctx.max_steps = cfg_.max_steps;
    ctx.episode = episode - 1;
    ctx.max_episodes = std::max(cfg_.max_episodes, 1);
    ctx.binary_classification = ds_.task == TaskKind::kClassification && ds_.class_count == 2;
    ctx.original_count = static_cast<int>(ds_.cols());
    Eigen::VectorXd importances = baseline_importances_;

    std::optional<Pending> pend_primary, pend_operator, pend_secondary;
    EpisodeRecord rec;
    rec.episode = episode;
    rec.weights = weights;
    rec.episode_best = -std::numeric_limits<double>::infinity();
    max_count_in_episode_ = static_cast<int>(cols.size());
    double prev_score = report_.baseline_score;
    int generated_total = 0;

    for (int step = 1; step <= cfg_.max_steps; ++step) {
      const FeaturePools pools = make_pools(cols);
      ctx.step = step - 1;
      ctx.best_score = best_score_;
      ctx.generated_count = generated_total;
      ctx.selected_count = static_cast<int>(cols.size()) - ctx.original_count;
      ctx.mean_importance = importances.size() > ctx.original_count
                                ? importances.tail(importances.size() - ctx.original_count).mean()
                                : 0.0;
      ctx.column_variances.resize(static_cast<std::size_t>(current.cols()));
      for (Eigen::Index j = 0; j < current.cols(); ++j) {
        ctx.column_variances[static_cast<std::size_t>(j)] = population_variance(current.col(j));
      }

      // Cascade: group, operator, then the partner group for binary operators.
      const Eigen::VectorXf s1 = build_state_primary(ctx);
      complete(pend_primary, *primary_, s1, false);
      const int group = primary_->act(s1, act_rng_);
      const Eigen::VectorXf so = build_state_operator(s1, group);
      complete(pend_operator, *operator_, so, false);
      const OpId op = op_from_index(operator_->act(so, act_rng_));
      window.push(op_index(op));
      int partner = -1;
      Eigen::VectorXf s2;
      if (is_binary(op)) {
        s2 = build_state_secondary(so, op);
        complete(pend_secondary, *secondary_, s2, false);
        partner = secondary_->act(s2, act_rng_);
      }

      const Strategy strategy = choose_strategy(weights);
      const Selection pick = causal_hierarchical_sample(pools, strategy, is_binary(op), group,
                                                        partner < 0 ? group : partner,
                                                        cfg_.pair_budget, sample_rng_);

      // Generate, skipping recipes already present.
      std::vector<Column> fresh;
      std::vector<Eigen::VectorXd> fresh_values;
      auto add = [&](FeatureRecipe recipe, Eigen::VectorXd values) {
        std::string key = serialize_recipe(recipe);
        if (!keys.insert(key).second) return;
        Column c;
        c.role = inherited_role(recipe, report_.groups.role_of);
        c.depth = op_depth(recipe);
        c.recipe = std::move(recipe);
        c.key = std::move(key);
        const Eigen::VectorXd train_values = take(values, plan_.train_idx);
        c.relevance = mutual_information(
            std::span<const double>(train_values.data(), static_cast<std::size_t>(train_values.size())),
            train_codes_);
        fresh.push_back(std::move(c));
        fresh_values.push_back(std::move(values));
      };
      if (is_binary(op)) {
        for (const auto& [a, b] : pick.pairs) {
          add(FeatureRecipe::binary(op, cols[static_cast<std::size_t>(a)].recipe,
                                    cols[static_cast<std::size_t>(b)].recipe),
              apply_binary(op, current.col(a), current.col(b)));
        }
      } else {
        for (int a : pick.unary_sources) {
          add(FeatureRecipe::unary(op, cols[static_cast<std::size_t>(a)].recipe),
              apply_unary(op, current.col(a)));
        }
      }
      const int generated = static_cast<int>(fresh.size());
      generated_total += generated;

      if (generated > 0) {
        Eigen::MatrixXd grown(current.rows(), current.cols() + generated);
        grown.leftCols(current.cols()) = current;
        for (int k = 0; k < generated; ++k) grown.col(current.cols() + k) = fresh_values[static_cast<std::size_t>(k)];
        for (Column& c : fresh) cols.push_back(std::move(c));

        std::vector<char> is_original(cols.size());
        std::vector<CausalRole> roles(cols.size());
        for (std::size_t k = 0; k < cols.size(); ++k) {
          is_original[k] = cols[k].original;
          roles[k] = cols[k].role;
        }
        const std::vector<int> keep = prune_features(take_rows(grown, plan_.train_idx), is_original,
                                                     roles, train_codes_, cap_, cfg_.min_per_group);
        std::vector<Column> kept_cols;
        kept_cols.reserve(keep.size());
        current.resize(grown.rows(), static_cast<Eigen::Index>(keep.size()));
        keys.clear();
        for (std::size_t k = 0; k < keep.size(); ++k) {
          current.col(static_cast<Eigen::Index>(k)) = grown.col(keep[k]);
          keys.insert(cols[static_cast<std::size_t>(keep[k])].key);
          kept_cols.push_back(std::move(cols[static_cast<std::size_t>(keep[k])]));
        }
        cols = std::move(kept_cols);
        max_count_in_episode_ = std::max(max_count_in_episode_, static_cast<int>(cols.size()));
      }

      const ForestEvaluation eval = evaluate_current(current);
      importances = eval.importances;

      std::vector<CausalRole> gen_roles;
      std::vector<double> gen_importance;
      std::vector<int> gen_depths;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cols[k].original) continue;
        gen_roles.push_back(cols[k].role);
        gen_importance.push_back(importances(static_cast<Eigen::Index>(k)));
        gen_depths.push_back(cols[k].depth);
      }
      const double r_perf = perf_reward(eval.score, prev_score, report_.baseline_score);
      const double psi = cfg_.reward == RewardMode::kNoCausal
                             ? 0.0
                             : causal_bonus(gen_roles, gen_importance, params_.weights);
      const double entropy = cfg_.reward == RewardMode::kNoDiversity ? 0.0 : entropy_bonus(window.view());
      const double complexity =
          cfg_.reward == RewardMode::kNoComplexity ? 0.0 : complexity_penalty(gen_depths, params_);
      const RewardBreakdown reward = compose_reward(r_perf, psi, entropy, complexity, params_);
      const auto r = static_cast<float>(reward.total);

      pend_primary = Pending{s1, group, r};
      pend_operator = Pending{so, op_index(op), r};
      if (partner >= 0) pend_secondary = Pending{s2, partner, r};
      train_agents();

      if (eval.score > best_score_) {
        best_score_ = eval.score;
        best_recipes_.clear();
        for (const Column& c : cols) {
          if (!c.original) best_recipes_.push_back(c.recipe);
        }
      }
      rec.episode_best = std::max(rec.episode_best, eval.score);
      prev_score = eval.score;
      ctx.step_scores.push_back(eval.score);
      ctx.train_score = eval.train_score;
      ctx.val_score = eval.score;

      StepRecord srec;
      srec.episode = episode;
      srec.step = step;
      srec.group = group;
      srec.op = op_index(op);
      srec.secondary_group = partner;
      srec.strategy = strategy;
      srec.generated = generated;
      srec.feature_count = static_cast<int>(cols.size());
      srec.score = eval.score;
      srec.reward = reward;
      report_.steps.push_back(srec);
      rec.steps = step;
    }

    // Episode end: pending transitions become terminal.
    if (pend_primary) complete(pend_primary, *primary_, pend_primary->state, true);
    if (pend_operator) complete(pend_operator, *operator_, pend_operator->state, true);
    if (pend_secondary) complete(pend_secondary, *secondary_, pend_secondary->state, true);

    if (rec.steps == 0) rec.episode_best = report_.baseline_score;
    rec.running_best = best_score_;
    rec.feature_count = static_cast<int>(cols.size());
    return rec;
  }

  Dataset ds_;
  RunConfig cfg_;
  RunReport report_;
  RewardParams params_;
  int cap_ = 0;
  SplitPlan plan_;
  Eigen::MatrixXd x_train_;
  Eigen::VectorXd y_train_;
  std::vector<int> train_codes_;
  std::uint64_t eval_seed_ = 0;
  std::array<double, 8> data_summary_{};
  std::vector<Column> base_;
  double baseline_train_score_ = 0.0;
  Eigen::VectorXd baseline_importances_;
  double best_score_ = 0.0;
  std::vector<FeatureRecipe> best_recipes_;
  int max_count_in_episode_ = 0;
  std::optional<DqnAgent> primary_;
  std::optional<DqnAgent> operator_;
  std::optional<DqnAgent> secondary_;
  Rng act_rng_;
  Rng sample_rng_;
  Rng train_rng_;
};

}  // namespace

RunResult run(const Dataset& ds, const RunConfig& cfg) {
  Runner runner(ds, cfg);
  return runner.run();
}

}  // namespace cforge
