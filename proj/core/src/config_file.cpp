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

#include "causalforge/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "causalforge/common.hpp"
#include "causalforge/dataset.hpp"

namespace cforge {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ParseError("config: " + std::string(key) + " = '" + std::string(value) + "' is not " +
                       std::string(what),
                   0, 0);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

long long to_integer(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

int to_int(std::string_view key, std::string_view v) {
  return static_cast<int>(to_integer(key, v));
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  bad_value(key, v, "a boolean");
}

template <typename T, typename F>
std::vector<T> to_list(std::string_view key, std::string_view v, F convert) {
  std::vector<T> out;
  while (true) {
    const auto comma = v.find(',');
    const std::string_view item = trim(v.substr(0, comma));
    if (item.empty()) bad_value(key, v, "a comma-separated list");
    out.push_back(convert(key, item));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

struct Entry {
  const char* section;
  const char* key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define CF_INT(SEC, KEY, FIELD)                                                   \
  Entry {                                                                         \
    SEC, KEY, [](RunConfig& c, std::string_view v) { c.FIELD = to_int(KEY, v); }, \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                \
  }
#define CF_LONG(SEC, KEY, FIELD)                                                                   \
  Entry {                                                                                          \
    SEC, KEY, [](RunConfig& c, std::string_view v) { c.FIELD = static_cast<long>(to_integer(KEY, v)); }, \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                                 \
  }
#define CF_DOUBLE(SEC, KEY, FIELD)                                                   \
  Entry {                                                                            \
    SEC, KEY, [](RunConfig& c, std::string_view v) { c.FIELD = to_double(KEY, v); }, \
        [](const RunConfig& c) { return format_double(c.FIELD); }                    \
  }
#define CF_BOOL(SEC, KEY, FIELD)                                                   \
  Entry {                                                                          \
    SEC, KEY, [](RunConfig& c, std::string_view v) { c.FIELD = to_bool(KEY, v); }, \
        [](const RunConfig& c) { return std::string(c.FIELD ? "true" : "false"); } \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> kEntries = {
      CF_INT("run", "episodes", max_episodes),
      CF_INT("run", "steps", max_steps),
      CF_DOUBLE("run", "early_stop_delta", early_stop_delta),
      CF_INT("run", "early_stop_patience", early_stop_patience),
      Entry{"run", "seed",
            [](RunConfig& c, std::string_view v) {
              std::uint64_t s = 0;
              const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
              if (ec != std::errc() || ptr != v.data() + v.size()) bad_value("seed", v, "a seed");
              c.seed = s;
            },
            [](const RunConfig& c) { return std::to_string(c.seed); }},
      CF_DOUBLE("run", "val_frac", val_frac),
      Entry{"phase1", "lambda_grid",
            [](RunConfig& c, std::string_view v) {
              c.lambda_grid = to_list<double>("lambda_grid", v, to_double);
            },
            [](const RunConfig& c) { return join(c.lambda_grid); }},
      CF_DOUBLE("phase1", "tau", tau),
      CF_BOOL("phase1", "ensemble", ensemble),
      CF_INT("phase1", "ensemble_size", ensemble_size),
      CF_INT("phase1", "max_dual_iters", notears.max_dual_iters),
      CF_INT("phase1", "max_inner_iters", notears.max_inner_iters),
      CF_DOUBLE("phase1", "h_tol", notears.h_tol),
      CF_DOUBLE("phase1", "grad_tol", notears.grad_tol),
      CF_DOUBLE("phase1", "rho_growth", notears.rho_growth),
      CF_BOOL("phase1", "scale_columns", notears.scale_columns),
      CF_INT("features", "group_cap", group_cap),
      CF_INT("features", "feature_cap", feature_cap),
      CF_INT("features", "pair_budget", pair_budget),
      CF_INT("features", "min_per_group", min_per_group),
      Entry{"ablation", "grouping",
            [](RunConfig& c, std::string_view v) { c.grouping = parse_grouping(v); },
            [](const RunConfig& c) { return std::string(to_string(c.grouping)); }},
      Entry{"ablation", "exploration",
            [](RunConfig& c, std::string_view v) { c.exploration = parse_exploration(v); },
            [](const RunConfig& c) { return std::string(to_string(c.exploration)); }},
      Entry{"ablation", "reward",
            [](RunConfig& c, std::string_view v) { c.reward = parse_reward_mode(v); },
            [](const RunConfig& c) { return std::string(to_string(c.reward)); }},
      CF_DOUBLE("reward", "alpha", reward_params.alpha),
      CF_DOUBLE("reward", "lambda_div", reward_params.lambda_div),
      CF_DOUBLE("reward", "lambda_comp", reward_params.lambda_comp),
      CF_DOUBLE("reward", "per_feature", reward_params.per_feature),
      CF_DOUBLE("reward", "per_depth", reward_params.per_depth),
      CF_DOUBLE("reward", "w_direct", reward_params.weights.direct),
      CF_DOUBLE("reward", "w_indirect", reward_params.weights.indirect),
      CF_DOUBLE("reward", "w_other", reward_params.weights.other),
      CF_BOOL("reward", "literal_negative_branch", reward_params.literal_negative_branch),
      Entry{"agent", "hidden",
            [](RunConfig& c, std::string_view v) {
              c.agent.network.hidden = to_list<int>("hidden", v, to_int);
            },
            [](const RunConfig& c) { return join(c.agent.network.hidden); }},
      CF_DOUBLE("agent", "dropout", agent.network.dropout),
      CF_BOOL("agent", "batch_norm", agent.network.batch_norm),
      CF_DOUBLE("agent", "learning_rate", agent.network.learning_rate),
      CF_DOUBLE("agent", "gamma", agent.gamma),
      CF_INT("agent", "batch_size", agent.batch_size),
      CF_LONG("agent", "target_sync", agent.target_sync_every),
      CF_DOUBLE("agent", "epsilon_start", agent.epsilon_start),
      CF_DOUBLE("agent", "epsilon_end", agent.epsilon_end),
      CF_LONG("agent", "epsilon_decay", agent.epsilon_decay_steps),
      CF_INT("agent", "buffer_ceiling", buffer_ceiling),
      CF_INT("evaluator", "step_trees", step_forest.n_trees),
      CF_INT("evaluator", "final_trees", final_forest.n_trees),
      Entry{"evaluator", "max_depth",
            [](RunConfig& c, std::string_view v) {
              c.step_forest.max_depth = c.final_forest.max_depth = to_int("max_depth", v);
            },
            [](const RunConfig& c) { return std::to_string(c.final_forest.max_depth); }},
      CF_INT("evaluator", "folds", final_folds),
  };
  return kEntries;
}

#undef CF_INT
#undef CF_LONG
#undef CF_DOUBLE
#undef CF_BOOL

}  // namespace

void set_config_value(RunConfig& cfg, std::string_view section, std::string_view key,
                      std::string_view value) {
  for (const Entry& e : entries()) {
    if (section == e.section && key == e.key) {
      e.set(cfg, trim(value));
      return;
    }
  }
  throw ParseError("config: unknown key '" + std::string(section) + "." + std::string(key) + "'",
                   0, 0);
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);
    const auto comment = line.find_first_of("#;");
    line = trim(line.substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("config: unterminated section header", line_no, 1);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config: expected key = value on line " + std::to_string(line_no), line_no, 1);
    }
    try {
      set_config_value(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")", line_no,
                       eq + 2);
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(cfg, buffer.str());
}

std::string dump_config(const RunConfig& cfg) {
  std::string out;
  std::string section;
  for (const Entry& e : entries()) {
    if (section != e.section) {
      if (!section.empty()) out += "\n";
      section = e.section;
      out += "[" + section + "]\n";
    }
    out += std::string(e.key) + " = " + e.get(cfg) + "\n";
  }
  return out;
}

}  // namespace cforge
