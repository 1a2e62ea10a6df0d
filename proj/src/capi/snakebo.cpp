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

#include "snakebo/snakebo.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "snake/harness.hpp"

struct snk_config {
  snake::Config config;
};

struct snk_benchmark {
  snake::Benchmark bench;
};

struct snk_run {
  snake::RunRecord record;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
snk_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SNK_OK;
  } catch (const snake::UnknownNameError& e) {
    g_last_error = e.what();
    return SNK_ERR_UNKNOWN_NAME;
  } catch (const snake::IoError& e) {
    g_last_error = e.what();
    return SNK_ERR_IO;
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return SNK_ERR_IO;
  } catch (const snake::NumericalError& e) {
    g_last_error = e.what();
    return SNK_ERR_NUMERICAL;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return SNK_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return SNK_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return SNK_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SNK_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return SNK_ERR_RUNTIME;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

snake::Vector to_vector(const double* p, std::size_t d) {
  return Eigen::Map<const snake::Vector>(p, static_cast<Eigen::Index>(d));
}

}  // namespace

extern "C" {

const char* snk_version(void) { return "0.1.0"; }

const char* snk_last_error(void) { return g_last_error.c_str(); }

snk_status snk_config_create(snk_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new snk_config();
  });
}

void snk_config_destroy(snk_config* cfg) { delete cfg; }

snk_status snk_config_load_file(snk_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg && path, "null argument");
    const snake::Config loaded = snake::Config::load(path);
    for (const auto& [k, v] : loaded.values()) cfg->config.set(k, v);
  });
}

snk_status snk_config_set(snk_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "null argument");
    cfg->config.set(key, value);
  });
}

snk_status snk_config_get(const snk_config* cfg, const char* key, char* buf, size_t cap,
                          size_t* len) {
  return guarded([&] {
    require(cfg && key, "null argument");
    const auto v = cfg->config.get(key);
    if (!v) throw snake::UnknownNameError(std::string("config key '") + key + "' is not set");
    if (len) *len = v->size();
    if (buf && cap > v->size()) std::memcpy(buf, v->c_str(), v->size() + 1);
  });
}

snk_status snk_experiment_run(const snk_config* cfg, size_t* n_files) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    const auto out = snake::run_experiment(snake::ExperimentConfig::from(cfg->config));
    if (n_files) *n_files = out.files.size();
  });
}

snk_status snk_escape_run(const char* mode, int points, int samples, int repetitions,
                          uint64_t seed, double* estimates, const char* out_dir) {
  return guarded([&] {
    require(mode && estimates, "null argument");
    snake::EscapeConfig cfg;
    const std::string m = mode;
    if (m == "stationary") {
      cfg = snake::EscapeConfig::stationary();
    } else if (m == "no-stationary") {
      cfg = snake::EscapeConfig::no_stationary();
    } else {
      throw snake::UnknownNameError("unknown escape mode '" + m + "'");
    }
    cfg.points = points;
    cfg.samples = samples;
    cfg.repetitions = repetitions;
    cfg.seed = seed;
    const snake::EscapeResult res = snake::run_escape_experiment(cfg);
    for (std::size_t i = 0; i < res.estimates.size(); ++i) estimates[i] = res.estimates[i];
    if (out_dir) {
      std::filesystem::create_directories(out_dir);
      nlohmann::ordered_json j;
      j["mode"] = m;
      j["region"] = {cfg.centre - cfg.radius, cfg.centre + cfg.radius};
      j["points"] = points;
      j["samples"] = samples;
      j["seed"] = seed;
      j["estimates"] = res.estimates;
      j["lengthscale"] = res.params.lengthscales[0];
      j["outputscale"] = res.params.outputscale;
      j["mean"] = res.params.mean;
      j["noise_var"] = res.params.noise_var;
      const std::string path = (std::filesystem::path(out_dir) / ("escape_" + m + ".json")).string();
      std::ofstream os(path);
      if (!os) throw snake::IoError("cannot write '" + path + "'");
      os << j.dump(2) << '\n';
    }
  });
}

snk_status snk_plot(const char* in_dir, const char* out_dir, size_t* n_files) {
  return guarded([&] {
    require(in_dir && out_dir, "null argument");
    const auto records = snake::load_records(in_dir);
    if (records.empty()) throw snake::IoError(std::string("no run CSVs in '") + in_dir + "'");
    const auto files = snake::emit_plots(records, out_dir);
    if (n_files) *n_files = files.size();
  });
}

snk_status snk_benchmark_create(const char* name, snk_benchmark** out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = new snk_benchmark{snake::make_benchmark(name)};
  });
}

void snk_benchmark_destroy(snk_benchmark* b) { delete b; }

int snk_benchmark_dim(const snk_benchmark* b) { return b ? b->bench.dim : 0; }

snk_status snk_benchmark_eval(const snk_benchmark* b, const double* x, double* y) {
  return guarded([&] {
    require(b && x && y, "null argument");
    *y = b->bench.eval(to_vector(x, static_cast<std::size_t>(b->bench.dim)));
  });
}

snk_status snk_benchmark_optimum(const snk_benchmark* b, double* f_star) {
  return guarded([&] {
    require(b && f_star, "null argument");
    *f_star = b->bench.optimum;
  });
}

snk_status snk_run_single(const snk_config* cfg, const char* function, const char* method,
                          uint64_t seed, snk_run** out) {
  return guarded([&] {
    require(cfg && function && method && out, "null argument");
    const auto ec = snake::ExperimentConfig::from(cfg->config);
    *out = new snk_run{snake::run_single(ec, function, method, seed)};
  });
}

size_t snk_run_length(const snk_run* run) { return run ? run->record.rows.size() : 0; }

int snk_run_dim(const snk_run* run) { return run ? run->record.dim : 0; }

snk_status snk_run_row(const snk_run* run, size_t index, double* x, double* y,
                       double* simple_regret, double* step_cost, double* cum_cost) {
  return guarded([&] {
    require(run != nullptr, "null run");
    const auto& row = run->record.rows.at(index);
    if (x) std::copy(row.x.data(), row.x.data() + row.x.size(), x);
    if (y) *y = row.y.front();
    if (simple_regret) *simple_regret = row.simple_regret.front();
    if (step_cost) *step_cost = row.step_cost;
    if (cum_cost) *cum_cost = row.cum_cost;
  });
}

snk_status snk_run_write_csv(const snk_run* run, const char* path) {
  return guarded([&] {
    require(run && path, "null argument");
    snake::write_csv(std::string(path), run->record);
  });
}

void snk_run_destroy(snk_run* run) { delete run; }

double snk_response_cost_dim(double delta, double alpha, double beta, double gamma) {
  return snake::response_cost_dim(delta, alpha, beta, gamma);
}

snk_status snk_euclidean_cost(const double* a, const double* b, size_t d, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = snake::euclidean_cost(to_vector(a, d), to_vector(b, d));
  });
}

snk_status snk_solve_tsp(const double* points, size_t n, size_t d, const double* source,
                         uint64_t seed, size_t* order_out, double* cost_out) {
  return guarded([&] {
    require(points && source && order_out, "null argument");
    require(n > 0 && d > 0, "need at least one point and one dimension");
    std::vector<snake::Vector> nodes;
    for (size_t i = 0; i < n; ++i) nodes.push_back(to_vector(points + i * d, d));
    snake::Rng rng(seed);
    const auto cost = snake::CostModel::euclidean();
    const snake::Path path = snake::solve_tsp(nodes, to_vector(source, d), cost, rng);
    for (size_t i = 0; i < n; ++i) order_out[i] = static_cast<size_t>(path.node_ids[i]);
    if (cost_out) *cost_out = snake::path_cost(path, cost);
  });
}

snk_status snk_point_deletion(const double* batch, size_t n, const double* queried, size_t q,
                              size_t d, double epsilon, uint64_t seed, double* out) {
  return guarded([&] {
    require(batch && out && (q == 0 || queried), "null argument");
    snake::Batch b;
    for (size_t i = 0; i < n; ++i) b.add(to_vector(batch + i * d, d));
    std::vector<snake::Vector> qs;
    for (size_t i = 0; i < q; ++i) qs.push_back(to_vector(queried + i * d, d));
    snake::Rng rng(seed);
    const snake::Batch kept = snake::point_deletion(b, qs, epsilon, rng);
    for (size_t i = 0; i < kept.size(); ++i) {
      std::copy(kept.points[i].data(), kept.points[i].data() + d, out + i * d);
    }
  });
}

snk_status snk_full_escape_probability(double p, int budget, int t, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = snake::full_escape_probability(p, budget, t);
  });
}

snk_status snk_predicted_escape_iteration(double p_hat, int budget, int* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = snake::predicted_escape_iteration(p_hat, budget);
  });
}

}  // extern "C"
