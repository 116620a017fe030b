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

#ifndef LAGGARD_ANALYTIC_MODELS_H
#define LAGGARD_ANALYTIC_MODELS_H

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "laggard/distributions.h"

namespace laggard {

// Launch/relaunch time meaning "never".
constexpr double kNever = std::numeric_limits<double>::infinity();

enum class RedKind { kNone, kReplication, kCoding };

struct Redundancy {
  RedKind kind = RedKind::kNone;
  int64_t c = 0;
  int64_t n = 0;

  static Redundancy None() { return {}; }
  static Redundancy Replication(int64_t c) {
    return {RedKind::kReplication, c, 0};
  }
  static Redundancy Coding(int64_t n) { return {RedKind::kCoding, 0, n}; }
};

enum class RedLaunch { kAtZero, kAtDelta };

struct PolicyConfig {
  int64_t k = 1;
  Redundancy redundancy;
  double delta = 0.0;
  RedLaunch red_launch = RedLaunch::kAtDelta;
  bool relaunch_at_delta = false;
};

void ValidatePolicy(const PolicyConfig& config);
std::string DescribePolicy(const PolicyConfig& config);

enum ApproxFlag : unsigned {
  kApproxLatency = 1u,
  kApproxCostCancel = 2u,
  kApproxCostNoCancel = 4u,
};

// Fields that a formula does not provide are NaN.
struct Metrics {
  double latency_mean = std::numeric_limits<double>::quiet_NaN();
  double cost_cancel_mean = std::numeric_limits<double>::quiet_NaN();
  double cost_nocancel_mean = std::numeric_limits<double>::quiet_NaN();
  double latency_sd = std::numeric_limits<double>::quiet_NaN();
  double cost_sd = std::numeric_limits<double>::quiet_NaN();
  unsigned approx_flags = 0;
};

std::string ApproxFlagsLabel(unsigned flags);

// Exponential and shifted-exponential delayed redundancy.
Metrics RepDelayedExp(int64_t k, int64_t c, double delta, double mu);
double RepDelayedExpTail(int64_t k, int64_t c, double delta, double mu,
                         double t);
Metrics RepDelayedSExp(int64_t k, int64_t c, double delta, double s,
                       double mu);
Metrics CodeDelayedExp(int64_t k, int64_t n, double delta, double mu);
double CodeDelayedExpTail(int64_t k, int64_t n, double delta, double mu,
                          double t);
Metrics CodeDelayedSExp(int64_t k, int64_t n, double delta, double s,
                        double mu);

// Zero-delay redundancy for exp, sexp or pareto task times.
Metrics ZeroDelay(int64_t k, const Redundancy& red, const TaskDist& dist);
Metrics ZeroDelaySecondMoments(int64_t k, const Redundancy& red,
                               const TaskDist& dist);

struct NoCostReplication {
  bool feasible = false;
  int64_t c_max = 0;
  double t_min = 0.0;
};
NoCostReplication LatencyNoCostReplication(int64_t k, double s, double alpha);

struct NoCostCoding {
  int64_t n_max = 0;
  double t_min = 0.0;
  bool sufficient_ok = false;
  bool necessary_ok = false;
  double t_min_bound = 0.0;
};
NoCostCoding LatencyNoCostCoding(int64_t k, double s, double alpha);

enum class TailChangeKind { kCoded, kReplicated };
enum class Verdict { kReduce, kIncrease, kUnchanged, kInconclusive };
const char* VerdictName(Verdict v);

struct TailChange {
  Verdict verdict = Verdict::kInconclusive;
  // Threshold on alpha_j / alpha_i above which latency drops.
  double approx_threshold = 0.0;
};
TailChange TailChangeVerdict(int64_t k, double r_i, double r_j,
                             double alpha_i, double alpha_j,
                             TailChangeKind kind);

// Relaunch of all remaining tasks at delta, pareto task times.
Metrics Relaunch(int64_t k, double delta, double s, double alpha);
double RelaunchTail(int64_t k, double delta, double s, double alpha,
                    double t);
// Alternative closed form for the cancelled cost; it does not match Relaunch().
double RelaunchAltCostCancel(int64_t k, double delta, double s,
                             double alpha);

struct RelaunchOpt {
  double delta_star = 0.0;
  double p_star = 0.0;
  bool sufficient_T = false;
  bool sufficient_alpha = false;
  double latency_norel = 0.0;
};
RelaunchOpt RelaunchOptimum(int64_t k, double s, double alpha);

double ZeroDelayRedRelaunch(int64_t k, const Redundancy& red, double delta,
                            double s, double alpha);

struct RedRelaunchSuff {
  bool sufficient_T = false;
  bool sufficient_alpha = false;
  double delta_star = 0.0;
};
RedRelaunchSuff RedRelaunchSufficiency(int64_t k, const Redundancy& red,
                                       double s, double alpha);

Metrics DelayedRedRelaunch(int64_t k, const Redundancy& red, double delta,
                           double s, double alpha);

// Picks the closed form matching the policy and distribution.
Metrics Evaluate(const PolicyConfig& config, const TaskDist& dist);

// Pr{T > t} where a closed form exists: delayed replication or coding with
// exponential tasks, and relaunch with pareto tasks.
double LatencyTail(const PolicyConfig& config, const TaskDist& dist, double t);

enum class Knob { kDelta, kC, kN, kR };
const char* KnobName(Knob knob);
Knob ParseKnob(const std::string& name);

struct CurvePoint {
  double knob = 0.0;
  Metrics metrics;
  std::string error;
};

struct TradeoffCurve {
  std::string knob_name;
  std::vector<CurvePoint> points;
};

PolicyConfig ApplyKnob(const PolicyConfig& base, Knob knob, double value);
TradeoffCurve Sweep(const PolicyConfig& base, const TaskDist& dist, Knob knob,
                    const std::vector<double>& grid);

}  // namespace laggard

#endif  // LAGGARD_ANALYTIC_MODELS_H
