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

#ifndef LAGGARD_FITTING_H
#define LAGGARD_FITTING_H

#include <cstdint>
#include <vector>

#include "laggard/distributions.h"

namespace laggard {

struct FitResult {
  TaskDist dist;
  double log_likelihood = 0.0;
  int64_t n_samples = 0;
};

FitResult FitPareto(const std::vector<double>& samples);
FitResult FitTruncatedPareto(const std::vector<double>& samples);

// Score of the truncated-Pareto log-likelihood in alpha, with s and u fixed.
double TruncParetoScore(const std::vector<double>& samples, double s, double u,
                        double alpha);

struct TailPoint {
  double t;
  double empirical;
  double fitted;
};

struct GoodnessReport {
  double ks_statistic = 0.0;
  std::vector<TailPoint> tail_points;
};

// Empirical tail points use Pr{X >= t}; the grid is log-spaced between the
// smallest and largest sample.
GoodnessReport Goodness(const FitResult& fit,
                        const std::vector<double>& samples,
                        int points = 20);

}  // namespace laggard

#endif  // LAGGARD_FITTING_H
