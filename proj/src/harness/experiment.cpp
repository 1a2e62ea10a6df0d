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
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "snake/harness.hpp"
#include "snake/stats.hpp"

namespace snake {

std::vector<SummaryEntry> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryEntry> entries;
  std::vector<std::vector<const RunRecord*>> groups;
  for (const auto& r : records) {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const SummaryEntry& e) {
      return e.method == r.method && e.function == r.function;
    });
    if (it == entries.end()) {
      SummaryEntry e;
      e.method = r.method;
      e.function = r.function;
      e.budget = r.budget;
      e.delay = r.delay;
      entries.push_back(e);
      groups.emplace_back();
      it = entries.end() - 1;
    }
    groups[static_cast<std::size_t>(it - entries.begin())].push_back(&r);
  }
  for (std::size_t g = 0; g < entries.size(); ++g) {
    std::vector<double> regrets;
    std::vector<double> costs;
    for (const RunRecord* r : groups[g]) {
      regrets.push_back(r->final_log_regret());
      costs.push_back(r->final_cost());
    }
    SummaryEntry& e = entries[g];
    e.n_seeds = static_cast<int>(groups[g].size());
    e.mean_final_log_regret = mean(regrets);
    e.std_final_log_regret = stddev(regrets);
    e.mean_final_cost = mean(costs);
    e.std_final_cost = stddev(costs);
  }
  return entries;
}

std::string summary_json(const std::vector<SummaryEntry>& entries) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["method"] = e.method;
    j["function"] = e.function;
    j["budget"] = e.budget;
    j["delay"] = e.delay;
    j["n_seeds"] = e.n_seeds;
    j["mean_final_log_regret"] = e.mean_final_log_regret;
    j["std_final_log_regret"] = e.std_final_log_regret;
    j["mean_final_cost"] = e.mean_final_cost;
    j["std_final_cost"] = e.std_final_cost;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string csv_file_name(const std::string& function, const std::string& method,
                          std::uint64_t seed) {
  return function + "_" + method + "_seed" + std::to_string(seed) + ".csv";
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SNAKE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
  }
  return std::max(n, 1);
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);

  struct Job {
    std::string method;
    std::string function;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& m : cfg.methods) {
    for (const auto& f : cfg.functions) {
      for (int s = 0; s < cfg.seeds; ++s) jobs.push_back({m, f, cfg.seed + static_cast<std::uint64_t>(s)});
    }
  }

  ExperimentOutput out;
  out.records.resize(jobs.size());
  std::vector<std::string> files(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (error) return;
      }
      try {
        const Job& job = jobs[i];
        RunRecord rec = run_single(cfg, job.function, job.method, job.seed);
        const std::string path = (fs::path(cfg.out) / csv_file_name(job.function, job.method, job.seed)).string();
        write_csv(path, rec);
        files[i] = path;
        out.records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n_workers = std::min<int>(worker_count(), static_cast<int>(jobs.size()));
  std::vector<std::thread> threads;
  for (int w = 1; w < n_workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  out.files = std::move(files);
  const std::string summary_path = (fs::path(cfg.out) / "summary.json").string();
  std::ofstream os(summary_path);
  if (!os) throw IoError("cannot write '" + summary_path + "'");
  os << summary_json(summarize(out.records));
  if (!os) throw IoError("failed writing '" + summary_path + "'");
  out.files.push_back(summary_path);
  return out;
}

std::vector<RunRecord> load_records(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<RunRecord> records;
  for (const auto& p : paths) {
    const std::string stem = p.stem().string();
    const auto first = stem.find('_');
    const auto last = stem.rfind("_seed");
    if (first == std::string::npos || last == std::string::npos || last <= first) continue;
    RunRecord rec = read_csv(p.string());
    rec.function = stem.substr(0, first);
    rec.method = stem.substr(first + 1, last - first - 1);
    rec.seed = std::stoull(stem.substr(last + 5));
    rec.budget = static_cast<int>(rec.rows.size());
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace snake
