/*
 * Laggard
 * Copyright (c) The Laggard Authors.
 * All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */

#ifndef LAGGARD_MONTE_CARLO_H
#define LAGGARD_MONTE_CARLO_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "laggard/analytic_models.h"
#include "laggard/distributions.h"

namespace laggard {

struct SimOptions {
  // 0 picks the hardware concurrency.
  int threads = 1;
  bool keep_trials = false;
};

struct EmpiricalMetrics {
  int64_t trials = 0;
  double latency_mean = 0.0;
  double latency_se = 0.0;
  double latency_sd = 0.0;
  double cost_cancel_mean = 0.0;
  double cost_cancel_se = 0.0;
  double cost_cancel_sd = 0.0;
  double cost_nocancel_mean = 0.0;
  double cost_nocancel_se = 0.0;
  std::vector<std::pair<double, double>> latency_quantiles;

  // Filled only with SimOptions::keep_trials.
  std::vector<double> trial_latency;
  std::vector<double> trial_cost_cancel;
  std::vector<double> trial_cost_nocancel;
};

// Trials are split into fixed-size blocks with their own derived seeds, so
// the result does not depend on the number of threads.
constexpr int64_t kTrialBlock = 4096;

EmpiricalMetrics SimulateJob(const PolicyConfig& config, const TaskDist& dist,
                             int64_t trials, uint64_t seed,
                             const SimOptions& options = {});

struct FieldCheck {
  std::string field;
  bool present = false;
  bool approx = false;
  double analytic = 0.0;
  double empirical = 0.0;
  double se = 0.0;
  double z = 0.0;
  double rel_err = 0.0;
  bool pass = true;
};

struct CompareReport {
  std::vector<FieldCheck> fields;
  bool all_pass = true;
};

CompareReport Compare(const Metrics& analytic,
                      const EmpiricalMetrics& empirical);

// Empirical Pr{T > t} from kept trials.
double EmpiricalLatencyTail(const EmpiricalMetrics& m, double t);

}  // namespace laggard

#endif  // LAGGARD_MONTE_CARLO_H
