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

#include "laggard/fitting.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "laggard/errors.h"

namespace laggard {

namespace {

struct Summary {
  double min;
  double max;
  double sum_log;
};

Summary Summarize(const std::vector<double>& samples, size_t min_count) {
  if (samples.size() < min_count) {
    std::ostringstream os;
    os << "fit needs at least " << min_count << " samples, got "
       << samples.size();
    Fail(ErrorKind::kDomain, os.str());
  }
  Summary s{samples[0], samples[0], 0.0};
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      Fail(ErrorKind::kDomain, "samples must be positive and finite");
    }
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    s.sum_log += std::log(x);
  }
  if (s.min == s.max) {
    Fail(ErrorKind::kDegenerate, "all samples are equal; tail index undefined");
  }
  return s;
}

}  // namespace

FitResult FitPareto(const std::vector<double>& samples) {
  Summary sm = Summarize(samples, 2);
  double n = static_cast<double>(samples.size());
  double sum = sm.sum_log - n * std::log(sm.min);
  double alpha = (n - 1.0) / sum;
  FitResult fit;
  fit.dist = ParetoDist{sm.min, alpha};
  fit.n_samples = static_cast<int64_t>(samples.size());
  fit.log_likelihood = n * std::log(alpha) + n * alpha * std::log(sm.min) -
                       (alpha + 1.0) * sm.sum_log;
  return fit;
}

double TruncParetoScore(const std::vector<double>& samples, double s, double u,
                        double alpha) {
  double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += std::log(x / s);
  double log_rho = std::log(s / u);
  double tail = std::exp(alpha * log_rho);
  // rho^a ln(rho) / (1 - rho^a)
  double corr = tail * log_rho / -std::expm1(alpha * log_rho);
  return n / alpha - sum + n * corr;
}

FitResult FitTruncatedPareto(const std::vector<double>& samples) {
  Summary sm = Summarize(samples, 3);
  double n = static_cast<double>(samples.size());
  double sum = sm.sum_log - n * std::log(sm.min);
  double log_rho = std::log(sm.min / sm.max);
  auto score = [&](double a) {
    double tail = std::exp(a * log_rho);
    return n / a - sum + n * tail * log_rho / -std::expm1(a * log_rho);
  };
  double lo = 0.01, hi = 50.0;
  double f_lo = score(lo), f_hi = score(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    Fail(ErrorKind::kConvergence,
         "truncated-Pareto score has no root for alpha in (0.01, 50]");
  }
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    if (score(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double alpha = 0.5 * (lo + hi);
  FitResult fit;
  fit.dist = TruncParetoDist{sm.min, sm.max, alpha};
  fit.n_samples = static_cast<int64_t>(samples.size());
  fit.log_likelihood = n * std::log(alpha) + n * alpha * std::log(sm.min) -
                       (alpha + 1.0) * sm.sum_log -
                       n * std::log(-std::expm1(alpha * log_rho));
  return fit;
}

GoodnessReport Goodness(const FitResult& fit,
                        const std::vector<double>& samples, int points) {
  Require(!samples.empty(), "goodness report needs samples");
  Require(points >= 2, "goodness report needs at least 2 tail points");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  GoodnessReport report;
  double d = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    double f = Cdf(fit.dist, sorted[i]);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  report.ks_statistic = d;

  double lo = std::log(sorted.front());
  double hi = std::log(sorted.back());
  for (int p = 0; p < points; ++p) {
    double t = std::exp(lo + (hi - lo) * p / (points - 1));
    if (p == 0) t = sorted.front();
    auto first = std::lower_bound(sorted.begin(), sorted.end(), t);
    double emp = static_cast<double>(sorted.end() - first) / n;
    double fitted = std::min(1.0, Tail(fit.dist, t));
    report.tail_points.push_back({t, emp, fitted});
  }
  return report;
}

}  // namespace laggard
