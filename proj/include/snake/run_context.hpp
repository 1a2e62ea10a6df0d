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
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "snake/costs.hpp"
#include "snake/run_record.hpp"
#include "snake/surrogate.hpp"
#include "snake/types.hpp"

namespace snake {

/// A black-box objective on the normalised domain [0,1]^d (maximisation).
struct Objective {
  std::string name;
  int dim = 0;
  std::function<double(const Vector&)> evaluate;
  // Maps an arbitrary box point to the nearest admissible point; identity when unset.
  std::function<Vector(const Vector&)> project;
  double optimum = std::numeric_limits<double>::quiet_NaN();

  Vector admissible(const Vector& x) const { return project ? project(x) : x; }
};

// Raised when an objective evaluation fails inside a run loop.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(int iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

/// Settings shared by every optimisation loop.
struct RunSettings {
  int budget = 100;
  int delay = 0;                 // iterations between submission and observation
  double noise_std = 0.0;        // additive Gaussian observation noise
  std::uint64_t seed = 0;
  int retrain_every = 25;        // new observations between hyperparameter refits
  bool retrain = true;
  std::optional<Vector> start;   // x_0; uniform from the seed when unset
  TrainingOptions training;
  // Skips pilot calibration and uses these hyperparameters and bounds.
  std::optional<Calibration> calibration;

  void validate(int d) const;
};

/// GP state for one objective: data, current hyperparameters, posterior.
class SurrogateTracker {
 public:
  SurrogateTracker(Calibration calibration, int d, int retrain_every, bool retrain,
                   TrainingOptions training);

  void add(const Vector& x, double y, int submit, int arrival);
  // Refits the posterior; retrains the hyperparameters first once enough new
  // observations have accumulated.
  const Posterior& refresh();

  const Posterior& posterior() const { return posterior_; }
  const Dataset& data() const { return data_; }
  const KernelParams& params() const { return params_; }
  const Calibration& calibration() const { return calibration_; }
  int trainings() const { return trainings_; }

 private:
  Calibration calibration_;
  Dataset data_;
  KernelParams params_;
  Posterior posterior_;
  int retrain_every_;
  bool retrain_;
  TrainingOptions training_;
  int since_training_ = 0;
  int trainings_ = 0;
};

// Pilot calibration stream for (seed, objective): independent of the method.
Calibration calibrate_objective(const Objective& objective, int budget, std::uint64_t seed,
                                const TrainingOptions& training = {});

/// Bookkeeping of one run: delayed observations, per-objective surrogates,
/// executed queries and the output record.
class RunContext {
 public:
  RunContext(std::vector<Objective> objectives, CostModel cost, const RunSettings& settings,
             std::string method);

  int dim() const { return dim_; }
  int budget() const { return settings_.budget; }
  int delay() const { return settings_.delay; }
  int num_objectives() const { return static_cast<int>(objectives_.size()); }
  const Objective& objective(int k = 0) const { return objectives_.at(k); }
  const CostModel& cost() const { return cost_; }
  const RunSettings& settings() const { return settings_; }

  const Vector& start() const { return start_; }
  // Last executed input, or x_0 before the first query.
  const Vector& current() const { return queries_.empty() ? start_ : queries_.back(); }
  const std::vector<Vector>& queries() const { return queries_; }
  // Submitted queries whose observation has not arrived by iteration t.
  std::vector<Vector> pending(int t) const;

  // Moves every observation with arrival <= t into the surrogates and refits
  // them. Returns true when at least one arrived.
  bool collect(int t);
  // Throws std::logic_error when a surrogate holds data submitted after t - delay - 1.
  void check_causality(int t) const;

  SurrogateTracker& model(int k = 0) { return models_.at(k); }
  const SurrogateTracker& model(int k = 0) const { return models_.at(k); }
  const Posterior& posterior(int k = 0) const { return models_.at(k).posterior(); }
  // Best observed value among arrived data, or the prior mean without data.
  double incumbent(int k = 0) const;

  // Evaluates x at iteration t (1-based) and appends the record row.
  void execute(int t, const Vector& x);

  Rng& rng() { return rng_; }
  RunRecord finish() &&;

 private:
  struct PendingObservation {
    Vector x;
    std::vector<double> y;
    int submit = 0;
    int arrival = 0;
  };

  std::vector<Objective> objectives_;
  CostModel cost_;
  RunSettings settings_;
  int dim_ = 0;
  Vector start_;
  Rng rng_;
  Rng noise_rng_;
  std::vector<SurrogateTracker> models_;
  std::vector<PendingObservation> pending_;
  std::vector<Vector> queries_;
  std::vector<double> best_;
  RunRecord record_;
};

}  // namespace snake
