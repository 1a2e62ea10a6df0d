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

#include "snake/run_context.hpp"

#include <algorithm>
#include <cmath>

namespace snake {

void RunSettings::validate(int d) const {
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (delay < 0) throw std::invalid_argument("delay must be non-negative");
  if (!(noise_std >= 0.0)) throw std::invalid_argument("noise std must be non-negative");
  if (retrain_every < 1) throw std::invalid_argument("retrain cadence must be at least 1");
  if (start) {
    require_same_dim(start->size(), d, "start point");
    if ((start->array() < 0.0).any() || (start->array() > 1.0).any()) {
      throw std::invalid_argument("start point outside [0,1]^d");
    }
  }
  if (calibration) {
    calibration->guess.validate();
    require_same_dim(calibration->guess.dim(), d, "calibration");
  }
}

SurrogateTracker::SurrogateTracker(Calibration calibration, int d, int retrain_every,
                                   bool retrain, TrainingOptions training)
    : calibration_(std::move(calibration)),
      data_(d),
      params_(calibration_.guess),
      posterior_(Posterior::prior(calibration_.guess)),
      retrain_every_(retrain_every),
      retrain_(retrain),
      training_(training) {}

void SurrogateTracker::add(const Vector& x, double y, int submit, int arrival) {
  data_.add(x, y, submit, arrival);
  ++since_training_;
}

const Posterior& SurrogateTracker::refresh() {
  if (retrain_ && since_training_ >= retrain_every_) {
    params_ = train_hyperparams(data_, params_, calibration_.bounds, training_);
    since_training_ = 0;
    ++trainings_;
  }
  posterior_ = fit_posterior(data_, params_);
  return posterior_;
}

Calibration calibrate_objective(const Objective& objective, int budget, std::uint64_t seed,
                                const TrainingOptions& training) {
  Rng rng = make_rng(seed, hash_name("calibration:" + objective.name));
  auto f = [&](const Vector& x) { return objective.evaluate(objective.admissible(x)); };
  return calibrate_bounds(f, budget, objective.dim, rng, training);
}

RunContext::RunContext(std::vector<Objective> objectives, CostModel cost,
                       const RunSettings& settings, std::string method)
    : objectives_(std::move(objectives)), cost_(std::move(cost)), settings_(settings) {
  if (objectives_.empty()) throw std::invalid_argument("run: no objective");
  dim_ = objectives_.front().dim;
  for (const auto& o : objectives_) {
    require_same_dim(o.dim, dim_, "run objectives");
    if (!o.evaluate) throw std::invalid_argument("run: objective without evaluator");
  }
  settings_.validate(dim_);

  if (settings_.start) {
    start_ = objectives_.front().admissible(*settings_.start);
  } else {
    Rng start_rng = make_rng(settings_.seed, hash_name("start"));
    start_ = objectives_.front().admissible(uniform_point(dim_, start_rng));
  }
  rng_ = make_rng(settings_.seed, hash_name("method:" + method));
  noise_rng_ = make_rng(settings_.seed, hash_name("noise"));

  for (const auto& o : objectives_) {
    Calibration cal = settings_.calibration
                          ? *settings_.calibration
                          : calibrate_objective(o, settings_.budget, settings_.seed,
                                                settings_.training);
    models_.emplace_back(std::move(cal), dim_, settings_.retrain_every, settings_.retrain,
                         settings_.training);
  }
  best_.assign(objectives_.size(), -std::numeric_limits<double>::infinity());

  record_.method = std::move(method);
  record_.function = objectives_.front().name;
  for (std::size_t k = 1; k < objectives_.size(); ++k) record_.function += "+" + objectives_[k].name;
  record_.seed = settings_.seed;
  record_.budget = settings_.budget;
  record_.delay = settings_.delay;
  record_.dim = dim_;
  record_.num_objectives = num_objectives();
  record_.start = start_;
}

std::vector<Vector> RunContext::pending(int t) const {
  std::vector<Vector> out;
  for (const auto& p : pending_) {
    if (p.arrival > t) out.push_back(p.x);
  }
  return out;
}

bool RunContext::collect(int t) {
  bool any = false;
  auto it = pending_.begin();
  while (it != pending_.end()) {
    if (it->arrival <= t) {
      for (std::size_t k = 0; k < models_.size(); ++k) {
        models_[k].add(it->x, it->y[k], it->submit, it->arrival);
      }
      it = pending_.erase(it);
      any = true;
    } else {
      ++it;
    }
  }
  if (any) {
    for (auto& m : models_) m.refresh();
  }
  return any;
}

void RunContext::check_causality(int t) const {
  const int latest = t - settings_.delay - 1;
  for (const auto& m : models_) {
    for (int s : m.data().submit_iter) {
      if (s > latest) {
        throw std::logic_error("causality violated: observation submitted at " +
                               std::to_string(s) + " used at iteration " + std::to_string(t));
      }
    }
  }
}

double RunContext::incumbent(int k) const {
  const auto& out = models_.at(k).data().outputs;
  if (out.empty()) return models_.at(k).params().mean;
  return *std::max_element(out.begin(), out.end());
}

void RunContext::execute(int t, const Vector& x) {
  if (t != static_cast<int>(queries_.size()) + 1) {
    throw std::logic_error("execute: iterations must be consecutive");
  }
  require_same_dim(x.size(), dim_, "execute");
  RunRow row;
  row.iter = t;
  row.x = x;
  row.step_cost = cost_(current(), x);
  row.cum_cost = (record_.rows.empty() ? 0.0 : record_.rows.back().cum_cost) + row.step_cost;
  row.arrived_at = t + settings_.delay + 1;

  PendingObservation obs;
  obs.x = x;
  obs.submit = t;
  obs.arrival = row.arrived_at;
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t k = 0; k < objectives_.size(); ++k) {
    double f = 0.0;
    try {
      f = objectives_[k].evaluate(x);
    } catch (const std::exception& e) {
      throw EvaluationError(t, objectives_[k].name + ": " + e.what());
    }
    if (!std::isfinite(f)) throw EvaluationError(t, objectives_[k].name + ": non-finite value");
    const double y = settings_.noise_std > 0.0 ? f + settings_.noise_std * noise(noise_rng_) : f;
    best_[k] = std::max(best_[k], f);
    row.y.push_back(y);
    row.best_y.push_back(best_[k]);
    row.simple_regret.push_back(objectives_[k].optimum - best_[k]);
    obs.y.push_back(y);
  }
  pending_.push_back(std::move(obs));
  queries_.push_back(x);
  record_.rows.push_back(std::move(row));
}

RunRecord RunContext::finish() && { return std::move(record_); }

}  // namespace snake
