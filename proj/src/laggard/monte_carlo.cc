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

#include "laggard/monte_carlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "laggard/errors.h"

namespace laggard {

namespace {

struct Outcome {
  double latency;
  double cost_cancel;
  double cost_nocancel;
};

class JobSimulator {
 public:
  JobSimulator(const PolicyConfig& config, const TaskDist& dist)
      : sample_(dist) {
    k_ = config.k;
    delta_ = config.delta;
    red_ = config.redundancy;
    at_zero_ = config.red_launch == RedLaunch::kAtZero;
    relaunch_ = config.relaunch_at_delta;
    int64_t width = red_.kind == RedKind::kCoding ? red_.n : k_;
    first_.resize(width);
    second_.resize(width);
    finish_.resize(width);
  }

  Outcome Run(Rng& rng) {
    switch (red_.kind) {
      case RedKind::kNone:
        return relaunch_ ? Relaunch(rng) : Plain(rng);
      case RedKind::kReplication:
        return Replication(rng);
      case RedKind::kCoding:
        return Coding(rng);
    }
    return {};
  }

 private:
  Outcome Plain(Rng& rng) {
    Outcome o{0.0, 0.0, 0.0};
    for (int64_t i = 0; i < k_; ++i) {
      double x = sample_(rng);
      o.latency = std::max(o.latency, x);
      o.cost_cancel += x;
    }
    o.cost_nocancel = o.cost_cancel;
    return o;
  }

  Outcome Relaunch(Rng& rng) {
    Outcome o{0.0, 0.0, 0.0};
    for (int64_t i = 0; i < k_; ++i) {
      double x = sample_(rng);
      double done, cost;
      if (x <= delta_) {
        done = x;
        cost = x;
      } else {
        double y = sample_(rng);
        done = delta_ + y;
        cost = delta_ + y;
      }
      o.latency = std::max(o.latency, done);
      o.cost_cancel += cost;
    }
    o.cost_nocancel = o.cost_cancel;
    return o;
  }

  Outcome Replication(Rng& rng) {
    const int64_t c = red_.c;
    Outcome o{0.0, 0.0, 0.0};
    if (at_zero_) {
      for (int64_t i = 0; i < k_; ++i) {
        double best = kNever, total = 0.0;
        for (int64_t j = 0; j <= c; ++j) {
          double x = sample_(rng);
          best = std::min(best, x);
          total += x;
        }
        if (relaunch_ && best > delta_) {
          double killed = static_cast<double>(c + 1) * delta_;
          double again = kNever, again_total = 0.0;
          for (int64_t j = 0; j <= c; ++j) {
            double y = sample_(rng);
            again = std::min(again, y);
            again_total += y;
          }
          o.latency = std::max(o.latency, delta_ + again);
          o.cost_cancel += killed + static_cast<double>(c + 1) * again;
          o.cost_nocancel += killed + again_total;
        } else {
          o.latency = std::max(o.latency, best);
          o.cost_cancel += static_cast<double>(c + 1) * best;
          o.cost_nocancel += total;
        }
      }
      return o;
    }
    for (int64_t i = 0; i < k_; ++i) {
      double x = sample_(rng);
      if (x <= delta_) {
        o.latency = std::max(o.latency, x);
        o.cost_cancel += x;
        o.cost_nocancel += x;
        continue;
      }
      double best = kNever, total = 0.0;
      int64_t copies = relaunch_ ? c + 1 : c;
      for (int64_t j = 0; j < copies; ++j) {
        double y = sample_(rng);
        best = std::min(best, y);
        total += y;
      }
      if (relaunch_) {
        double done = delta_ + best;
        o.latency = std::max(o.latency, done);
        o.cost_cancel += delta_ + static_cast<double>(copies) * best;
        o.cost_nocancel += delta_ + total;
      } else {
        double done = std::min(x, delta_ + best);
        o.latency = std::max(o.latency, done);
        o.cost_cancel += done + static_cast<double>(c) * (done - delta_);
        o.cost_nocancel += x + total;
      }
    }
    return o;
  }

  // k-th smallest of v[0..m), m >= k >= 1.
  static double KthSmallest(std::vector<double>& v, int64_t m, int64_t k) {
    std::nth_element(v.begin(), v.begin() + (k - 1), v.begin() + m);
    return v[k - 1];
  }

  Outcome Coding(Rng& rng) {
    const int64_t n = red_.n;
    Outcome o{0.0, 0.0, 0.0};
    int64_t initial = at_zero_ ? n : k_;
    double early_cost = 0.0, early_max = 0.0;
    int64_t done_early = 0, late = 0;
    double late_total = 0.0;
    for (int64_t i = 0; i < initial; ++i) {
      double x = sample_(rng);
      first_[i] = x;
      if (x <= delta_) {
        ++done_early;
        early_cost += x;
        early_max = std::max(early_max, x);
      } else {
        second_[late++] = x;
        late_total += x;
      }
    }
    if (done_early >= k_) {
      // Finished by delta using only the initially launched tasks.
      double t = at_zero_ ? KthSmallest(first_, initial, k_) : early_max;
      double cancel = 0.0, total = 0.0;
      for (int64_t i = 0; i < initial; ++i) {
        cancel += std::min(first_[i], t);
        total += first_[i];
      }
      return {t, cancel, total};
    }
    const int64_t need = k_ - done_early;
    if (relaunch_) {
      // Every unfinished copy is killed at delta and n - R fresh ones start.
      const int64_t fresh = n - done_early;
      double killed = static_cast<double>(late) * delta_;
      double fresh_total = 0.0;
      for (int64_t j = 0; j < fresh; ++j) {
        double y = sample_(rng);
        finish_[j] = y;
        fresh_total += y;
      }
      double y_need = KthSmallest(finish_, fresh, need);
      double cancel = 0.0;
      for (int64_t j = 0; j < fresh; ++j) cancel += std::min(finish_[j], y_need);
      o.latency = delta_ + y_need;
      o.cost_cancel = early_cost + killed + cancel;
      o.cost_nocancel = early_cost + killed + fresh_total;
      return o;
    }
    if (at_zero_) {
      double t = KthSmallest(first_, n, k_);
      double cancel = 0.0, total = 0.0;
      for (int64_t i = 0; i < n; ++i) {
        cancel += std::min(first_[i], t);
        total += first_[i];
      }
      return {t, cancel, total};
    }
    // Delayed coding: n - k coded tasks join the late originals at delta.
    int64_t m = 0;
    for (int64_t i = 0; i < late; ++i) finish_[m++] = second_[i];
    double coded_total = 0.0;
    for (int64_t j = 0; j < n - k_; ++j) {
      double y = sample_(rng);
      coded_total += y;
      finish_[m++] = delta_ + y;
    }
    double t = KthSmallest(finish_, m, need);
    double cancel = early_cost - static_cast<double>(n - k_) * delta_;
    for (int64_t i = 0; i < m; ++i) cancel += std::min(finish_[i], t);
    o.latency = t;
    o.cost_cancel = cancel;
    o.cost_nocancel = early_cost + late_total + coded_total;
    return o;
  }

  Sampler sample_;
  int64_t k_ = 1;
  double delta_ = 0.0;
  Redundancy red_;
  bool at_zero_ = false;
  bool relaunch_ = false;
  std::vector<double> first_, second_, finish_;
};

struct BlockStats {
  int64_t count = 0;
  double mean[3] = {0.0, 0.0, 0.0};
  double m2[3] = {0.0, 0.0, 0.0};

  void Add(const Outcome& o) {
    const double v[3] = {o.latency, o.cost_cancel, o.cost_nocancel};
    ++count;
    for (int f = 0; f < 3; ++f) {
      double d = v[f] - mean[f];
      mean[f] += d / static_cast<double>(count);
      m2[f] += d * (v[f] - mean[f]);
    }
  }

  void Merge(const BlockStats& other) {
    if (other.count == 0) return;
    int64_t total = count + other.count;
    for (int f = 0; f < 3; ++f) {
      double d = other.mean[f] - mean[f];
      mean[f] += d * static_cast<double>(other.count) /
                 static_cast<double>(total);
      m2[f] += other.m2[f] + d * d * static_cast<double>(count) *
                                 static_cast<double>(other.count) /
                                 static_cast<double>(total);
    }
    count = total;
  }
};

}  // namespace

EmpiricalMetrics SimulateJob(const PolicyConfig& config, const TaskDist& dist,
                             int64_t trials, uint64_t seed,
                             const SimOptions& options) {
  Require(trials >= 1, "trials must be >= 1");
  ValidatePolicy(config);
  ValidateDist(dist);

  const int64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<uint64_t> block_seeds(blocks);
  {
    Rng master(seed);
    for (auto& s : block_seeds) s = master.Next();
  }
  std::vector<BlockStats> stats(blocks);
  std::vector<double> latency(trials);
  std::vector<double> cost_cancel, cost_nocancel;
  if (options.keep_trials) {
    cost_cancel.resize(trials);
    cost_nocancel.resize(trials);
  }

  std::atomic<int64_t> next{0};
  auto worker = [&]() {
    JobSimulator sim(config, dist);
    for (;;) {
      int64_t b = next.fetch_add(1);
      if (b >= blocks) break;
      Rng rng(block_seeds[b]);
      int64_t lo = b * kTrialBlock;
      int64_t hi = std::min(trials, lo + kTrialBlock);
      for (int64_t t = lo; t < hi; ++t) {
        Outcome o = sim.Run(rng);
        stats[b].Add(o);
        latency[t] = o.latency;
        if (options.keep_trials) {
          cost_cancel[t] = o.cost_cancel;
          cost_nocancel[t] = o.cost_nocancel;
        }
      }
    }
  };

  int threads = options.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = static_cast<int>(std::min<int64_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BlockStats all;
  for (const auto& s : stats) all.Merge(s);

  EmpiricalMetrics m;
  m.trials = trials;
  double nd = static_cast<double>(trials);
  auto sd = [&](int f) {
    return trials > 1 ? std::sqrt(all.m2[f] / (nd - 1.0)) : 0.0;
  };
  m.latency_mean = all.mean[0];
  m.latency_sd = sd(0);
  m.latency_se = m.latency_sd / std::sqrt(nd);
  m.cost_cancel_mean = all.mean[1];
  m.cost_cancel_sd = sd(1);
  m.cost_cancel_se = m.cost_cancel_sd / std::sqrt(nd);
  m.cost_nocancel_mean = all.mean[2];
  m.cost_nocancel_se = sd(2) / std::sqrt(nd);

  std::vector<double> sorted = latency;
  std::sort(sorted.begin(), sorted.end());
  for (double p : {0.5, 0.9, 0.99}) {
    auto rank = static_cast<int64_t>(std::ceil(p * nd));
    rank = std::clamp<int64_t>(rank, 1, trials);
    m.latency_quantiles.emplace_back(p, sorted[rank - 1]);
  }
  if (options.keep_trials) {
    m.trial_latency = std::move(latency);
    m.trial_cost_cancel = std::move(cost_cancel);
    m.trial_cost_nocancel = std::move(cost_nocancel);
  }
  return m;
}

CompareReport Compare(const Metrics& analytic,
                      const EmpiricalMetrics& empirical) {
  CompareReport report;
  auto check = [&](const char* name, double a, double mean, double se,
                   bool approx) {
    FieldCheck f;
    f.field = name;
    f.present = !std::isnan(a);
    f.approx = approx;
    f.analytic = a;
    f.empirical = mean;
    f.se = se;
    if (f.present) {
      if (se > 0.0) {
        f.z = (a - mean) / se;
      } else {
        f.z = std::fabs(a - mean) <= 1e-12 * std::max(1.0, std::fabs(a))
                  ? 0.0
                  : std::copysign(kNever, a - mean);
      }
      f.rel_err = mean != 0.0 ? std::fabs(a - mean) / std::fabs(mean)
                              : std::fabs(a - mean);
      f.pass = approx ? f.rel_err <= 0.05 : std::fabs(f.z) <= 3.0;
      if (!f.pass) report.all_pass = false;
    }
    report.fields.push_back(f);
  };
  check("latency_mean", analytic.latency_mean, empirical.latency_mean,
        empirical.latency_se, analytic.approx_flags & kApproxLatency);
  check("cost_cancel_mean", analytic.cost_cancel_mean,
        empirical.cost_cancel_mean, empirical.cost_cancel_se,
        analytic.approx_flags & kApproxCostCancel);
  check("cost_nocancel_mean", analytic.cost_nocancel_mean,
        empirical.cost_nocancel_mean, empirical.cost_nocancel_se,
        analytic.approx_flags & kApproxCostNoCancel);
  return report;
}

double EmpiricalLatencyTail(const EmpiricalMetrics& m, double t) {
  Require(!m.trial_latency.empty(), "per-trial latencies were not kept");
  int64_t above = 0;
  for (double x : m.trial_latency) {
    if (x > t) ++above;
  }
  return static_cast<double>(above) / static_cast<double>(m.trial_latency.size());
}

}  // namespace laggard
