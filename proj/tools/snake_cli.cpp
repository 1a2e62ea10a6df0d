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

// Command-line front end: experiment grids, escape experiments and plots.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snakebo/snakebo.h"

namespace {

int fail(const char* what) {
  std::fprintf(stderr, "snake: %s: %s\n", what, snk_last_error());
  return 1;
}

struct ConfigGuard {
  snk_config* cfg = nullptr;
  ~ConfigGuard() { snk_config_destroy(cfg); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-aware Bayesian optimisation experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a method x function x seed grid");
  std::string config_file;
  std::optional<std::string> function, method, epsilon, cost, out;
  std::optional<long long> budget, delay, seed, seeds;
  std::vector<std::string> overrides;
  run->add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
  run->add_option("--function", function, "Benchmark name(s), comma separated; join with '+' for joint objectives");
  run->add_option("--method", method, "snake, l-snake, EI, EIpu, UCB, PI, TrEI, RandomTSP, asyncTS, UCBwLP, EIpuLP");
  run->add_option("--budget", budget, "Number of queries T");
  run->add_option("--delay", delay, "Observation delay in iterations");
  run->add_option("--epsilon", epsilon, "Deletion constant or 'adaptive'");
  run->add_option("--cost", cost, "euclidean or response");
  run->add_option("--seed", seed, "First seed");
  run->add_option("--seeds", seeds, "Number of consecutive seeds");
  run->add_option("--out", out, "Output directory");
  run->add_option("--set", overrides, "Extra key=value overrides");

  auto* escape = app.add_subcommand("escape", "Estimate the non-escape probability");
  std::string mode = "stationary";
  int points = 15;
  int samples = 5000;
  int repetitions = 5;
  unsigned long long escape_seed = 0;
  std::string escape_out = "escape";
  escape->add_option("--mode", mode, "stationary or no-stationary")
      ->check(CLI::IsMember({"stationary", "no-stationary"}));
  escape->add_option("--points", points, "Training points inside the region");
  escape->add_option("--samples", samples, "Thompson samples per estimate");
  escape->add_option("--repetitions", repetitions, "Independent repetitions");
  escape->add_option("--seed", escape_seed, "Seed");
  escape->add_option("--out", escape_out, "Output directory");

  auto* plot = app.add_subcommand("plot", "Render SVG plots from run CSVs");
  std::string plot_in, plot_out;
  plot->add_option("--in", plot_in, "Directory with run CSVs")->required();
  plot->add_option("--out", plot_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    ConfigGuard guard;
    if (snk_config_create(&guard.cfg) != SNK_OK) return fail("config");
    if (!config_file.empty() && snk_config_load_file(guard.cfg, config_file.c_str()) != SNK_OK) {
      return fail("config file");
    }
    auto set = [&](const char* key, const std::string& value) {
      return snk_config_set(guard.cfg, key, value.c_str()) == SNK_OK;
    };
    bool ok = true;
    if (function) ok = ok && set("function", *function);
    if (method) ok = ok && set("method", *method);
    if (budget) ok = ok && set("budget", std::to_string(*budget));
    if (delay) ok = ok && set("delay", std::to_string(*delay));
    if (epsilon) ok = ok && set("epsilon", *epsilon);
    if (cost) ok = ok && set("cost", *cost);
    if (seed) ok = ok && set("seed", std::to_string(*seed));
    if (seeds) ok = ok && set("seeds", std::to_string(*seeds));
    if (out) ok = ok && set("out", *out);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "snake: --set expects key=value, got '%s'\n", kv.c_str());
        return 2;
      }
      ok = ok && set(kv.substr(0, eq).c_str(), kv.substr(eq + 1));
    }
    if (!ok) return fail("option");
    size_t n_files = 0;
    if (snk_experiment_run(guard.cfg, &n_files) != SNK_OK) return fail("run");
    char dir[4096];
    size_t len = 0;
    const char* where = "results";
    if (snk_config_get(guard.cfg, "out", dir, sizeof(dir), &len) == SNK_OK && len < sizeof(dir)) where = dir;
    std::printf("wrote %zu files to %s\n", n_files, where);
    return 0;
  }

  if (*escape) {
    std::vector<double> estimates(static_cast<std::size_t>(repetitions > 0 ? repetitions : 0));
    if (snk_escape_run(mode.c_str(), points, samples, repetitions, escape_seed, estimates.data(),
                       escape_out.c_str()) != SNK_OK) {
      return fail("escape");
    }
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      std::printf("repetition %zu: p_hat = %.4f\n", i + 1, estimates[i]);
    }
    return 0;
  }

  if (*plot) {
    size_t n_files = 0;
    if (snk_plot(plot_in.c_str(), plot_out.c_str(), &n_files) != SNK_OK) return fail("plot");
    std::printf("wrote %zu plots to %s\n", n_files, plot_out.c_str());
    return 0;
  }
  return 0;
}
