// Copyright 2026 The snakebo Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snake/baselines.hpp"
#include "snake/benchmarks.hpp"
#include "snake/costs.hpp"
#include "snake/run_record.hpp"
#include "snake/snake.hpp"

namespace snake {

/// Flat `key = value` configuration. '#' starts a comment; keys are unique.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  // Throws std::invalid_argument for keys outside the known set.
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

struct ExperimentConfig {
  std::vector<std::string> functions{"branin2d"};  // "a+b+c" runs several objectives jointly
  std::vector<std::string> methods{"snake"};
  int budget = 100;
  int delay = 0;
  double epsilon = 0.1;
  bool adaptive_epsilon = false;
  std::string cost = "euclidean";
  double cost_scale = 1.0;
  std::vector<double> response_alpha;  // per dimension; defaults 1
  std::vector<double> response_beta;   // defaults 0.1
  std::vector<double> response_gamma;  // defaults 1
  std::vector<int> response_controlled;  // 1-based; defaults to all
  std::uint64_t seed = 0;
  int seeds = 1;
  std::string out = "results";
  double noise_std = 0.0;
  int retrain_every = 25;
  int n_local = kDefaultLocalPoints;
  int n_global = kDefaultGlobalNodes;
  int num_features = kDefaultFourierFeatures;
  bool sobol_initial_batch = false;
  std::vector<int> objective_ratios;
  std::optional<Vector> start;
  double switch_cost = 3.3;
  std::string mask_file;
  AcquisitionConfig acquisition;

  static ExperimentConfig from(const Config& cfg);
  void validate() const;
};

std::vector<Objective> make_objectives(const std::string& function, const std::string& mask_file = "");
CostModel make_cost_model(const ExperimentConfig& cfg, const std::string& function);

// One run of `method` on `function` with the given seed.
RunRecord run_single(const ExperimentConfig& cfg, const std::string& function,
                     const std::string& method, std::uint64_t seed);

struct SummaryEntry {
  std::string method;
  std::string function;
  int budget = 0;
  int delay = 0;
  int n_seeds = 0;
  double mean_final_log_regret = 0.0;
  double std_final_log_regret = 0.0;
  double mean_final_cost = 0.0;
  double std_final_cost = 0.0;
};

// Groups records by (method, function) and aggregates over seeds. Multi-
// objective runs use the first objective's regret.
std::vector<SummaryEntry> summarize(const std::vector<RunRecord>& records);
std::string summary_json(const std::vector<SummaryEntry>& entries);

std::string csv_file_name(const std::string& function, const std::string& method,
                          std::uint64_t seed);

// Worker count from SNAKE_THREADS, else the hardware concurrency.
int worker_count();

struct ExperimentOutput {
  std::vector<RunRecord> records;
  std::vector<std::string> files;  // CSVs then the summary
};

/// Runs the method x function x seed grid in parallel and writes one CSV per
/// run plus summary.json into cfg.out.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Escape experiment on the bimodal test function

struct EscapeConfig {
  double centre = 0.15;
  double radius = 0.05;
  int points = 15;
  int samples = 5000;
  int repetitions = 10;
  std::uint64_t seed = 0;
  int calibration_budget = 100;  // pilot size follows the usual rule
  ThompsonOptions thompson;

  static EscapeConfig stationary();     // region around the inferior local maximum
  static EscapeConfig no_stationary();  // region [0, 0.1], free of stationary points
  void validate() const;
};

// Fraction of `samples` Thompson maximisers within `radius` of `centre`.
double estimate_nonescape_probability(const Posterior& post, const EscapeConfig& cfg, Rng& rng);

struct EscapeResult {
  std::vector<double> estimates;  // one per repetition
  KernelParams params;
};

// Per repetition: `points` uniform training points inside the region,
// hyperparameters from a pilot calibration on the whole function.
EscapeResult run_escape_experiment(const EscapeConfig& cfg);

int predicted_escape_iteration(double p_hat, int budget);
double full_escape_probability(double p, int budget, int t);

// ---------------------------------------------------------------------------
// Plots

// Three SVGs per function: regret vs cost, regret vs iteration, cost vs
// iteration, each with mean +/- half a standard deviation over seeds.
std::vector<std::string> emit_plots(const std::vector<RunRecord>& records, const std::string& out_dir);

// Reads every "<function>_<method>_seed<k>.csv" in a directory.
std::vector<RunRecord> load_records(const std::string& dir);

}  // namespace snake
