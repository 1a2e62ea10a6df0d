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

#include <string>
#include <vector>

#include "snake/planner.hpp"
#include "snake/run_context.hpp"
#include "snake/thompson.hpp"

namespace snake {

enum class Strategy { kEI, kEIpu, kUCB, kPI, kTrEI, kRandomTSP, kAsyncTS, kUCBwLP, kEIpuLP };

// Accepts the tags EI, EIpu, UCB, PI, TrEI, RandomTSP, asyncTS, UCBwLP, EIpuLP
// (case-insensitive). Throws std::invalid_argument otherwise.
Strategy parse_strategy(const std::string& tag);
std::string strategy_name(Strategy s);

struct AcquisitionConfig {
  int multistarts = 7500;      // random candidates screened per maximisation
  int refine_starts = 10;      // best candidates refined by Adam
  int epochs = 150;
  double learning_rate = 1e-4;
  double gamma = 1.0;          // EIpu cost offset

  void validate() const;
};

// Closed forms in terms of the predictive mean and standard deviation.
double expected_improvement(double mean, double sd, double y_best);
double probability_of_improvement(double mean, double sd, double y_best);
double ucb_beta(int t, int d);

double expected_improvement(const Posterior& post, const Vector& x, double y_best);
double probability_of_improvement(const Posterior& post, const Vector& x, double y_best);
double ucb(const Posterior& post, const Vector& x, int t, int d);
double eipu(const Posterior& post, const Vector& x, const Vector& x_prev, const CostModel& cost,
            double gamma, double y_best);

// Value and gradient in x. The gradient is written when grad != nullptr.
double expected_improvement(const Posterior& post, const Vector& x, double y_best, Vector* grad);
double probability_of_improvement(const Posterior& post, const Vector& x, double y_best,
                                  Vector* grad);
double ucb(const Posterior& post, const Vector& x, int t, int d, Vector* grad);

// Screens `multistarts` uniform candidates by value, then refines the best
// `refine_starts` with box-constrained Adam and returns the best point found.
Vector maximize_acquisition(const DifferentiableFunction& acquisition, int d, Rng& rng,
                            const AcquisitionConfig& cfg);

// x_t moved towards p_t by at most `lengthscale`.
Vector truncate_step(const Vector& x_t, const Vector& p_t, double lengthscale);
Vector truncated_ei_step(const Posterior& post, const Vector& x_t, double lengthscale,
                         double y_best, const AcquisitionConfig& cfg, Rng& rng);

// Largest posterior-mean gradient norm over 50 d Sobol points.
double estimate_lipschitz(const Posterior& post, int d);

// Product of soft exclusion factors Phi(z_j) over the busy points, in (0, 1].
double local_penalizer(const Vector& x, const std::vector<Vector>& busy, const Posterior& post,
                       double lipschitz, double y_best, Vector* grad = nullptr);

// acq_value times the penalizer; acq_value must already be non-negative.
// Returned unchanged when no point is busy.
double local_penalize(double acq_value, const Vector& x, const std::vector<Vector>& busy,
                      const Posterior& post, double lipschitz, double y_best);

struct BaselineConfig : RunSettings {
  Strategy strategy = Strategy::kEI;
  AcquisitionConfig acquisition;
  ThompsonOptions thompson;
  TspOptions tsp;
  // Multi-objective runs move to the next objective after this much cost.
  double switch_cost = 3.3;
};

RunRecord run_baseline(const std::vector<Objective>& objectives, const CostModel& cost,
                       const BaselineConfig& config);
RunRecord run_baseline(const Objective& objective, const CostModel& cost,
                       const BaselineConfig& config);

}  // namespace snake
