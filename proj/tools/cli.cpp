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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "causalforge/dataset.hpp"
#include "causalforge/digraph.hpp"
#include "causalforge/forest.hpp"
#include "causalforge/orchestrator.hpp"
#include "causalforge/recipe.hpp"
#include "causalforge/report.hpp"
#include "causalforge/robustness.hpp"
#include "causalforge/run_config.hpp"
#include "causalforge/scm.hpp"

namespace cforge {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
};

struct DataOptions {
  std::string input;
  std::string target = "y";
  std::string task = "regression";
};

void add_data_options(CLI::App* cmd, DataOptions& d) {
  cmd->add_option("--input", d.input, "CSV with a header row")->required();
  cmd->add_option("--target", d.target, "target column")->capture_default_str();
  cmd->add_option("--task", d.task, "regression or classification")
      ->check(CLI::IsMember({"regression", "classification"}))
      ->capture_default_str();
}

Dataset load(const DataOptions& d) { return load_csv(d.input, d.target, parse_task_kind(d.task)); }

// defaults < config file < --set < --seed
RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) apply_config_file(cfg, g.config_path);
  for (const std::string& item : g.overrides) {
    const auto eq = item.find('=');
    const auto dot = item.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      throw UsageError("--set expects section.key=value, got '" + item + "'");
    }
    try {
      set_config_value(cfg, item.substr(0, dot), item.substr(dot + 1, eq - dot - 1),
                       item.substr(eq + 1));
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }
  if (g.seed) cfg.seed = *g.seed;
  cfg.validate();
  return cfg;
}

fs::path out_dir(const GlobalOptions& g) {
  fs::path dir(g.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_roles(const fs::path& path, const std::vector<std::string>& names,
                 const std::vector<CausalRole>& roles) {
  std::ofstream out = open_out(path);
  const std::vector<std::string> header = {"feature", "role"};
  write_csv_row(out, header);
  for (std::size_t j = 0; j < roles.size(); ++j) {
    const std::vector<std::string> row = {names[j], std::string(to_string(roles[j]))};
    write_csv_row(out, row);
  }
}

struct SynthOptions {
  int d = 20;
  int n = 1000;
  double degree = 2.0;
  int parents = 3;
  double noise = 1.0;
  std::string nonlinearity = "none";
};

int cmd_synth(const GlobalOptions& g, const SynthOptions& o, std::ostream& out) {
  ScmSpec spec;
  spec.d = o.d;
  spec.n = o.n;
  spec.expected_degree = o.degree;
  spec.noise_std = o.noise;
  spec.nonlinearity = parse_nonlinearity(o.nonlinearity);
  spec.target_parent_count = std::max(o.parents, required_parents(spec.nonlinearity));
  const ScmSample sample = generate_scm(spec, resolve_config(g).seed);
  const fs::path dir = out_dir(g);
  write_csv(sample.data, dir / "data.csv");
  write_matrix_csv(sample.adjacency, dir / "adjacency.csv");
  out << "wrote " << (dir / "data.csv").string() << " and " << (dir / "adjacency.csv").string()
      << " (" << sample.data.rows() << " rows, " << sample.data.cols() << " features)\n";
  return 0;
}

int cmd_discover(const GlobalOptions& g, const DataOptions& d, const std::string& truth_path,
                 std::ostream& out) {
  const RunConfig cfg = resolve_config(g);
  const Dataset ds = load(d);
  ds.validate();
  const StructureDiscovery found = discover_structure(ds.X, ds.y, cfg);
  const fs::path dir = out_dir(g);
  write_matrix_csv(found.W, dir / "weights.csv");
  const auto nodes = static_cast<Eigen::Index>(found.dag.node_count());
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(nodes, nodes);
  for (const auto& [i, j] : found.dag.edges()) {
    adjacency(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  }
  write_matrix_csv(adjacency, dir / "dag.csv");
  write_roles(dir / "roles.csv", ds.feature_names, found.roles);

  out << "lambda " << format_double(found.lambda) << "\n";
  out << "edges " << found.dag.edge_count() << "\n";
  if (found.removed_edges > 0) out << "cycle_edges_removed " << found.removed_edges << "\n";
  if (!truth_path.empty()) {
    const Eigen::MatrixXd truth = read_matrix_csv(truth_path);
    if (truth.rows() != nodes || truth.cols() != nodes) {
      throw Error("truth adjacency is " + std::to_string(truth.rows()) + "x" +
                  std::to_string(truth.cols()) + ", expected " + std::to_string(nodes) + "x" +
                  std::to_string(nodes));
    }
    const Digraph truth_graph = graph_from_adjacency(truth, 0.0);
    out << "shd " << shd(found.dag, truth_graph) << "\n";
    out << "edge_f1 " << format_double(edge_f1(found.dag, truth_graph)) << "\n";
  }
  return 0;
}

int cmd_engineer(const GlobalOptions& g, const DataOptions& d, std::ostream& out) {
  const RunConfig cfg = resolve_config(g);
  const Dataset ds = load(d);
  const RunResult result = run(ds, cfg);
  const fs::path dir = out_dir(g);
  write_run_outputs(dir, ds, result);
  {
    std::ofstream cfg_out = open_out(dir / "config.ini");
    cfg_out << dump_config(cfg);
  }
  const RunReport& r = result.report;
  out << "baseline_cv " << format_double(r.baseline_cv) << "\n";
  out << "final_cv " << format_double(r.final_cv) << "\n";
  out << "generated " << r.best_generated << "\n";
  out << "episodes " << r.episodes.size() << " (" << to_string(r.termination) << ")\n";
  return 0;
}

int cmd_transform(const GlobalOptions& g, const std::string& input, const std::string& recipes_path,
                  const std::string& target, std::ostream& out) {
  const std::vector<FeatureRecipe> recipes = read_recipe_file(recipes_path);
  Dataset ds = load_features_csv(input);
  // The target column is carried through verbatim and never fed to a recipe.
  std::vector<std::string> target_text;
  if (!target.empty()) {
    const auto it = std::find(ds.feature_names.begin(), ds.feature_names.end(), target);
    if (it == ds.feature_names.end()) throw Error("target column '" + target + "' not found in " + input);
    const auto t = static_cast<Eigen::Index>(it - ds.feature_names.begin());
    std::ifstream raw(input);
    const CsvTable table = read_csv_table(raw);
    for (const auto& r : table.rows) target_text.push_back(r[static_cast<std::size_t>(t)]);
    Eigen::MatrixXd rest(ds.rows(), ds.cols() - 1);
    rest << ds.X.leftCols(t), ds.X.rightCols(ds.cols() - t - 1);
    ds.X = std::move(rest);
    ds.feature_names.erase(it);
  }
  for (const FeatureRecipe& r : recipes) {
    for (int c : source_columns(r)) {
      if (c >= ds.cols()) {
        throw Error("recipe " + serialize_recipe(r) + " reads column " + std::to_string(c) +
                    " but the input has " + std::to_string(ds.cols()) + " feature columns");
      }
    }
  }
  const Eigen::MatrixXd features = apply_recipes(ds.X, recipes);
  std::vector<std::string> names = ds.feature_names;
  for (const FeatureRecipe& r : recipes) names.push_back(serialize_recipe(r));
  const fs::path dir = out_dir(g);
  const fs::path path = dir / "transformed.csv";
  std::ofstream file = open_out(path);
  std::vector<std::string> row = names;
  if (!target.empty()) row.push_back(target);
  write_csv_row(file, row);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    row.clear();
    for (Eigen::Index j = 0; j < features.cols(); ++j) row.push_back(format_double(features(i, j)));
    if (!target.empty()) row.push_back(target_text[static_cast<std::size_t>(i)]);
    write_csv_row(file, row);
  }
  out << "wrote " << path.string() << " (" << recipes.size() << " generated columns)\n";
  return 0;
}

int cmd_evaluate(const GlobalOptions& g, const DataOptions& d, int folds, std::ostream& out) {
  const RunConfig cfg = resolve_config(g);
  const Dataset ds = load(d);
  ds.validate();
  const double score = cross_validate(ds, cfg.final_forest, cfg.seed, folds);
  out << (ds.task == TaskKind::kClassification ? "macro_f1 " : "one_minus_rae ")
      << format_double(score) << "\n";
  return 0;
}

int cmd_robustness(const GlobalOptions& g, const DataOptions& d, const std::vector<double>& gammas,
                   const std::vector<std::string>& kind_names, std::ostream& out) {
  const RunConfig cfg = resolve_config(g);
  const Dataset ds = load(d);
  std::vector<ShiftKind> kinds;
  for (const std::string& k : kind_names) kinds.push_back(parse_shift_kind(k));
  const std::vector<DegradationRow> rows = robustness_experiment(ds, cfg, gammas, kinds);
  const fs::path dir = out_dir(g);
  {
    std::ofstream file = open_out(dir / "degradation.csv");
    write_degradation_table(file, rows);
  }
  write_degradation_table(out, rows);
  return 0;
}

int cmd_ablate(const GlobalOptions& g, const DataOptions& d, std::ostream& out) {
  const RunConfig cfg = resolve_config(g);
  const Dataset ds = load(d);
  const fs::path dir = out_dir(g);
  std::ofstream file = open_out(dir / "ablation.csv");
  const std::vector<std::string> header = {"variant",  "baseline_cv",    "final_cv",
                                           "best_score", "episodes", "episodes_to_95",
                                           "generated"};
  write_csv_row(file, header);
  write_csv_row(out, header);
  for (const ConfigVariant& v : ablation_variants(cfg)) {
    const RunResult result = run(ds, v.config);
    const RunReport& r = result.report;
    const std::vector<std::string> row = {v.name,
                                          format_double(r.baseline_cv),
                                          format_double(r.final_cv),
                                          format_double(r.best_score),
                                          std::to_string(r.episodes.size()),
                                          std::to_string(r.episodes_to_95),
                                          std::to_string(r.best_generated)};
    write_csv_row(file, row);
    write_csv_row(out, row);
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causally guided automated feature engineering", "causalforge"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--config", g.config_path, "sectioned key=value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--set", g.overrides, "override one setting, e.g. --set run.episodes=10");

  SynthOptions synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "write a synthetic SCM dataset and its graph");
  synth_cmd->add_option("--d", synth.d, "feature count")->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "rows")->capture_default_str();
  synth_cmd->add_option("--degree", synth.degree, "expected degree")->capture_default_str();
  synth_cmd->add_option("--parents", synth.parents, "target parents")->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise, "noise standard deviation")->capture_default_str();
  synth_cmd->add_option("--nonlinearity", synth.nonlinearity, "target form")
      ->check(CLI::IsMember({"none", "linear", "quadratic", "exponential", "mixed"}))
      ->capture_default_str();

  DataOptions data;
  std::string truth;
  CLI::App* discover_cmd = app.add_subcommand("discover", "structure discovery and causal roles");
  add_data_options(discover_cmd, data);
  discover_cmd->add_option("--truth", truth, "true adjacency CSV (features then target)");

  CLI::App* engineer_cmd = app.add_subcommand("engineer", "full feature-engineering run");
  add_data_options(engineer_cmd, data);

  std::string recipes;
  std::string transform_target;
  CLI::App* transform_cmd = app.add_subcommand("transform", "apply a recipe file to a CSV");
  transform_cmd->add_option("--input", data.input, "CSV with a header row")->required();
  transform_cmd->add_option("--recipes", recipes, "recipe file")->required();
  transform_cmd->add_option("--target", transform_target, "target column to carry through");

  int folds = 5;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "cross-validated score of a CSV");
  add_data_options(evaluate_cmd, data);
  evaluate_cmd->add_option("--folds", folds, "fold count")->check(CLI::Range(2, 100))->capture_default_str();

  std::vector<double> gammas = {0.1, 0.3, 0.5};
  std::vector<std::string> kinds = {"multiplicative"};
  CLI::App* robustness_cmd = app.add_subcommand("robustness", "covariate-shift degradation table");
  add_data_options(robustness_cmd, data);
  robustness_cmd->add_option("--gammas", gammas, "shift magnitudes")->delimiter(',')->capture_default_str();
  robustness_cmd->add_option("--kinds", kinds, "multiplicative and/or additive")
      ->delimiter(',')
      ->check(CLI::IsMember({"multiplicative", "additive"}))
      ->capture_default_str();

  CLI::App* ablate_cmd = app.add_subcommand("ablate", "run every ablation variant");
  add_data_options(ablate_cmd, data);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*synth_cmd) return cmd_synth(g, synth, out);
    if (*discover_cmd) return cmd_discover(g, data, truth, out);
    if (*engineer_cmd) return cmd_engineer(g, data, out);
    if (*transform_cmd) return cmd_transform(g, data.input, recipes, transform_target, out);
    if (*evaluate_cmd) return cmd_evaluate(g, data, folds, out);
    if (*robustness_cmd) return cmd_robustness(g, data, gammas, kinds, out);
    if (*ablate_cmd) return cmd_ablate(g, data, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace cforge
