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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "snake/harness.hpp"

namespace snake {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream ss(v);
  T out{};
  ss >> out;
  if (ss.fail() || !(ss >> std::ws).eof()) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" + v + "'");
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& v) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) out.push_back(parse_number<T>(key, item));
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  std::string s;
  for (char c : v) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + v + "'");
}

Benchmark benchmark_for(const std::string& name, const std::string& mask_file) {
  if (!mask_file.empty() && name.rfind("shekel-o", 0) == 0 && name.size() == 9) {
    return make_shekel(name[8] - '0', load_polygon(mask_file));
  }
  return make_benchmark(name);
}

std::vector<std::string> split_objectives(const std::string& function) {
  std::vector<std::string> names;
  std::stringstream ss(function);
  std::string item;
  while (std::getline(ss, item, '+')) names.push_back(trim(item));
  return names;
}

}  // namespace

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = {
      "function",      "method",           "budget",          "delay",
      "epsilon",       "cost",             "cost_scale",      "response_alpha",
      "response_beta", "response_gamma",   "response_controlled", "seed",
      "seeds",         "out",              "noise_std",       "retrain_every",
      "n_local",       "n_global",         "num_features",    "sobol_initial_batch",
      "objective_ratios", "start",         "switch_cost",     "mask_file",
      "multistarts",   "refine_starts",    "acq_epochs",      "acq_learning_rate",
      "gamma"};
  return keys;
}

void Config::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw UnknownNameError("unknown config key '" + key + "'");
  }
  values_[key] = value;
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (cfg.has(key)) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.set(key, trim(line.substr(eq + 1)));
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

ExperimentConfig ExperimentConfig::from(const Config& cfg) {
  ExperimentConfig e;
  for (const auto& [key, v] : cfg.values()) {
    if (key == "function") e.functions = split_list(v);
    else if (key == "method") e.methods = split_list(v);
    else if (key == "budget") e.budget = parse_number<int>(key, v);
    else if (key == "delay") e.delay = parse_number<int>(key, v);
    else if (key == "epsilon") {
      if (v == "adaptive") {
        e.adaptive_epsilon = true;
      } else {
        e.adaptive_epsilon = false;
        e.epsilon = parse_number<double>(key, v);
      }
    } else if (key == "cost") e.cost = v;
    else if (key == "cost_scale") e.cost_scale = parse_number<double>(key, v);
    else if (key == "response_alpha") e.response_alpha = parse_list<double>(key, v);
    else if (key == "response_beta") e.response_beta = parse_list<double>(key, v);
    else if (key == "response_gamma") e.response_gamma = parse_list<double>(key, v);
    else if (key == "response_controlled") e.response_controlled = parse_list<int>(key, v);
    else if (key == "seed") e.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "seeds") e.seeds = parse_number<int>(key, v);
    else if (key == "out") e.out = v;
    else if (key == "noise_std") e.noise_std = parse_number<double>(key, v);
    else if (key == "retrain_every") e.retrain_every = parse_number<int>(key, v);
    else if (key == "n_local") e.n_local = parse_number<int>(key, v);
    else if (key == "n_global") e.n_global = parse_number<int>(key, v);
    else if (key == "num_features") e.num_features = parse_number<int>(key, v);
    else if (key == "sobol_initial_batch") e.sobol_initial_batch = parse_bool(key, v);
    else if (key == "objective_ratios") e.objective_ratios = parse_list<int>(key, v);
    else if (key == "start") {
      const auto xs = parse_list<double>(key, v);
      e.start = Eigen::Map<const Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
    } else if (key == "switch_cost") e.switch_cost = parse_number<double>(key, v);
    else if (key == "mask_file") e.mask_file = v;
    else if (key == "multistarts") e.acquisition.multistarts = parse_number<int>(key, v);
    else if (key == "refine_starts") e.acquisition.refine_starts = parse_number<int>(key, v);
    else if (key == "acq_epochs") e.acquisition.epochs = parse_number<int>(key, v);
    else if (key == "acq_learning_rate") e.acquisition.learning_rate = parse_number<double>(key, v);
    else if (key == "gamma") e.acquisition.gamma = parse_number<double>(key, v);
  }
  e.validate();
  return e;
}

void ExperimentConfig::validate() const {
  if (functions.empty()) throw std::invalid_argument("config: no function");
  if (methods.empty()) throw std::invalid_argument("config: no method");
  if (budget < 1) throw std::invalid_argument("config: budget must be >= 1");
  if (delay < 0) throw std::invalid_argument("config: delay must be >= 0");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("config: epsilon must be >= 0");
  if (seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
  if (cost != "euclidean" && cost != "response") {
    throw std::invalid_argument("config: cost must be 'euclidean' or 'response'");
  }
  if (!(cost_scale > 0.0)) throw std::invalid_argument("config: cost_scale must be > 0");
  for (const auto& m : methods) {
    if (m != "snake" && m != "l-snake") parse_strategy(m);
  }
  for (const auto& f : functions) {
    for (const auto& name : split_objectives(f)) {
      const auto names = benchmark_names();
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw UnknownNameError("config: unknown function '" + name + "'");
      }
    }
  }
  acquisition.validate();
}

std::vector<Objective> make_objectives(const std::string& function, const std::string& mask_file) {
  std::vector<Objective> out;
  for (const auto& name : split_objectives(function)) {
    out.push_back(benchmark_for(name, mask_file).objective());
  }
  if (out.empty()) throw std::invalid_argument("empty function name");
  return out;
}

CostModel make_cost_model(const ExperimentConfig& cfg, const std::string& function) {
  CostModel model;
  if (cfg.cost == "euclidean") {
    model = CostModel::euclidean();
  } else {
    const Benchmark b = benchmark_for(split_objectives(function).front(), cfg.mask_file);
    const int d = b.dim;
    auto per_dim = [d](const std::vector<double>& given, double fallback, const char* what) {
      if (given.empty()) return std::vector<double>(d, fallback);
      if (static_cast<int>(given.size()) != d) {
        throw std::invalid_argument(std::string("config: ") + what + " needs one value per dimension");
      }
      return given;
    };
    ResponseParams p;
    p.alpha = per_dim(cfg.response_alpha, 1.0, "response_alpha");
    p.beta = per_dim(cfg.response_beta, 0.1, "response_beta");
    p.gamma = per_dim(cfg.response_gamma, 1.0, "response_gamma");
    if (cfg.response_controlled.empty()) {
      for (int i = 0; i < d; ++i) p.controlled.push_back(i);
    } else {
      for (int i : cfg.response_controlled) p.controlled.push_back(i - 1);
    }
    model = CostModel::response(p, b.span());
  }
  return cfg.cost_scale == 1.0 ? model : model.scaled(cfg.cost_scale);
}

RunRecord run_single(const ExperimentConfig& cfg, const std::string& function,
                     const std::string& method, std::uint64_t seed) {
  const std::vector<Objective> objectives = make_objectives(function, cfg.mask_file);
  const CostModel cost = make_cost_model(cfg, function);
  auto fill = [&](RunSettings& s) {
    s.budget = cfg.budget;
    s.delay = cfg.delay;
    s.noise_std = cfg.noise_std;
    s.seed = seed;
    s.retrain_every = cfg.retrain_every;
    s.start = cfg.start;
  };
  RunRecord rec;
  if (method == "snake" || method == "l-snake") {
    SnakeConfig sc;
    fill(sc);
    sc.epsilon = cfg.epsilon;
    sc.adaptive_epsilon = cfg.adaptive_epsilon || method == "l-snake";
    sc.n_local = cfg.n_local;
    sc.n_global = cfg.n_global;
    sc.thompson.num_features = cfg.num_features;
    sc.sobol_initial_batch = cfg.sobol_initial_batch;
    sc.objective_ratios = cfg.objective_ratios;
    rec = run_snake(objectives, cost, sc);
  } else {
    BaselineConfig bc;
    fill(bc);
    bc.strategy = parse_strategy(method);
    bc.acquisition = cfg.acquisition;
    bc.thompson.num_features = cfg.num_features;
    bc.switch_cost = cfg.switch_cost;
    rec = run_baseline(objectives, cost, bc);
  }
  rec.method = method;
  rec.function = function;
  return rec;
}

}  // namespace snake
