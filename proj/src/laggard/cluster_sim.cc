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

#include "laggard/cluster_sim.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "laggard/errors.h"

namespace laggard {

namespace {

class ZipfTable {
 public:
  explicit ZipfTable(const ZipfParams& p) {
    cdf_.resize(p.max_k);
    double acc = 0.0;
    for (int64_t k = 1; k <= p.max_k; ++k) {
      acc += std::pow(static_cast<double>(k), -p.exponent);
      cdf_[k - 1] = acc;
    }
    for (double& v : cdf_) v /= acc;
    cdf_.back() = 1.0;
  }
  int64_t Sample(Rng& rng) const {
    double u = rng.Uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int64_t>(it - cdf_.begin()) + 1;
  }
  double Mean() const {
    double m = 0.0, prev = 0.0;
    for (size_t i = 0; i < cdf_.size(); ++i) {
      m += static_cast<double>(i + 1) * (cdf_[i] - prev);
      prev = cdf_[i];
    }
    return m;
  }

 private:
  std::vector<double> cdf_;
};

enum class TaskState : uint8_t { kWaiting, kActive, kDone, kRemoved };

struct Task {
  int64_t job;
  int32_t server;
  TaskState state;
  double work;
  double finish_v;
  double dispatched;
  double active_since;
};

struct Job {
  double arrival;
  int64_t k;
  int64_t first_task;
  int64_t n;
  int64_t completed = 0;
  bool done = false;
  bool probe = false;
  bool measured = false;
  double cost = 0.0;
  double done_at = 0.0;
};

struct Server {
  double v = 0.0;
  double last_t = 0.0;
  std::set<std::pair<double, int64_t>> active;
  std::deque<int64_t> waiting;
  int64_t load = 0;
  int64_t live_waiting = 0;
  uint64_t version = 0;
  double busy = 0.0;
};

struct Event {
  double time;
  int32_t server;
  uint64_t version;
  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    return server > o.server;
  }
};

class Cluster {
 public:
  Cluster(const ClusterConfig& config, uint64_t seed)
      : cfg_(config),
        rng_(seed),
        zipf_(config.task_count),
        size_(config.task_size_dist),
        servers_(config.num_servers) {}

  ClusterResult Run();

 private:
  void Advance(Server& s, double now) {
    double m = static_cast<double>(s.active.size());
    if (m > 0.0) {
      s.v += (now - s.last_t) / m;
      s.busy += now - s.last_t;
    }
    s.last_t = now;
  }

  void Reschedule(int32_t id) {
    Server& s = servers_[id];
    ++s.version;
    if (s.active.empty()) return;
    double m = static_cast<double>(s.active.size());
    double t = s.last_t + std::max(0.0, s.active.begin()->first - s.v) * m;
    events_.push({t, id, s.version});
  }

  void Activate(Server& s, int64_t tid, double now) {
    Task& t = tasks_[tid];
    t.state = TaskState::kActive;
    t.active_since = now;
    t.finish_v = s.v + t.work;
    s.active.emplace(t.finish_v, tid);
    total_wait_ += now - t.dispatched;
    ++waits_counted_;
  }

  void Promote(Server& s, double now) {
    while (static_cast<int64_t>(s.active.size()) < cfg_.ps_limit &&
           !s.waiting.empty()) {
      int64_t tid = s.waiting.front();
      s.waiting.pop_front();
      if (tasks_[tid].state != TaskState::kWaiting) continue;
      --s.live_waiting;
      --queued_;
      Activate(s, tid, now);
    }
  }

  void ChargeService(const Task& t, double now) {
    Job& j = jobs_[t.job];
    double c = 0.0;
    if (t.state == TaskState::kActive) {
      c = now - t.active_since;
      if (cfg_.cost_includes_wait) c += t.active_since - t.dispatched;
    } else if (cfg_.cost_includes_wait) {
      c = now - t.dispatched;
    }
    j.cost += c;
  }

  void Audit(const Server& s) {
    if (s.live_waiting > 0 &&
        static_cast<int64_t>(s.active.size()) != cfg_.ps_limit) {
      ++result_.work_conservation_violations;
    }
    for (const auto& entry : s.active) {
      if (jobs_[tasks_[entry.second].job].done) ++result_.removal_violations;
    }
  }

  void Arrive(double now);
  void Complete(int32_t id, double now);
  void RemoveRest(Job& job, int64_t except, double now);

  const ClusterConfig& cfg_;
  Rng rng_;
  ZipfTable zipf_;
  Sampler size_;
  std::vector<Server> servers_;
  std::vector<Task> tasks_;
  std::vector<Job> jobs_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  int64_t queued_ = 0;
  double total_wait_ = 0.0;
  int64_t waits_counted_ = 0;
  int64_t warmup_jobs_ = 0;
  std::vector<int32_t> order_;
  ClusterResult result_;
};

void Cluster::Arrive(double now) {
  int64_t index = static_cast<int64_t>(jobs_.size());
  Job job;
  job.arrival = now;
  job.probe = cfg_.probe.every > 0 && (index + 1) % cfg_.probe.every == 0;
  double work;
  if (job.probe) {
    job.k = cfg_.probe.k;
    work = cfg_.probe.size;
  } else {
    job.k = zipf_.Sample(rng_);
    work = size_(rng_);
  }
  job.measured = index >= warmup_jobs_;
  job.n = static_cast<int64_t>(
      std::floor(cfg_.expansion_rate * static_cast<double>(job.k) + 1e-9));
  job.first_task = static_cast<int64_t>(tasks_.size());
  jobs_.push_back(job);

  // n least-loaded servers, ties to the lowest index.
  const int64_t S = cfg_.num_servers;
  int64_t remaining = job.n;
  while (remaining > 0) {
    int64_t take = std::min(remaining, S);
    auto less = [this](int32_t a, int32_t b) {
      if (servers_[a].load != servers_[b].load) {
        return servers_[a].load < servers_[b].load;
      }
      return a < b;
    };
    std::partial_sort(order_.begin(), order_.begin() + take, order_.end(),
                      less);
    std::vector<int32_t> chosen(order_.begin(), order_.begin() + take);
    for (int32_t sid : chosen) {
      Server& s = servers_[sid];
      Advance(s, now);
      int64_t tid = static_cast<int64_t>(tasks_.size());
      double w = work;
      if (!job.probe && cfg_.size_per_task && tid > job.first_task) {
        w = size_(rng_);
      }
      tasks_.push_back({index, sid, TaskState::kWaiting, w, 0.0, now, now});
      ++s.load;
      if (static_cast<int64_t>(s.active.size()) < cfg_.ps_limit) {
        Activate(s, tid, now);
      } else {
        s.waiting.push_back(tid);
        ++s.live_waiting;
        ++queued_;
      }
      Reschedule(sid);
    }
    remaining -= take;
  }
  if (queued_ > cfg_.max_queued_tasks) {
    std::ostringstream os;
    os << "cluster unstable: " << queued_ << " waiting tasks exceed limit "
       << cfg_.max_queued_tasks << " at t=" << now;
    Fail(ErrorKind::kInstability, os.str());
  }
}

void Cluster::RemoveRest(Job& job, int64_t except, double now) {
  for (int64_t tid = job.first_task; tid < job.first_task + job.n; ++tid) {
    if (tid == except) continue;
    Task& t = tasks_[tid];
    if (t.state == TaskState::kDone || t.state == TaskState::kRemoved) {
      continue;
    }
    Server& s = servers_[t.server];
    Advance(s, now);
    ChargeService(t, now);
    if (t.state == TaskState::kActive) {
      s.active.erase({t.finish_v, tid});
    } else {
      --s.live_waiting;
      --queued_;
    }
    t.state = TaskState::kRemoved;
    --s.load;
    Promote(s, now);
    Reschedule(t.server);
  }
}

void Cluster::Complete(int32_t id, double now) {
  Server& s = servers_[id];
  Advance(s, now);
  auto first = s.active.begin();
  int64_t tid = first->second;
  s.active.erase(first);
  Task& t = tasks_[tid];
  ChargeService(t, now);
  t.state = TaskState::kDone;
  --s.load;
  Job& job = jobs_[t.job];
  ++job.completed;
  if (job.probe && job.measured) {
    result_.task_exec_samples.push_back(now - t.dispatched);
  }
  if (job.completed == job.k) {
    job.done = true;
    job.done_at = now;
    RemoveRest(job, tid, now);
  }
  Promote(s, now);
  Reschedule(id);
  if (cfg_.audit) Audit(s);
}

ClusterResult Cluster::Run() {
  order_.resize(cfg_.num_servers);
  std::iota(order_.begin(), order_.end(), 0);
  double rate = cfg_.arrival_rate > 0.0 ? cfg_.arrival_rate
                                        : DerivedArrivalRate(cfg_);
  result_.arrival_rate = rate;
  warmup_jobs_ = static_cast<int64_t>(
      std::floor(cfg_.warmup_fraction * static_cast<double>(cfg_.horizon_jobs)));
  jobs_.reserve(cfg_.horizon_jobs);

  double next_arrival = -std::log(rng_.UniformOpenLow()) / rate;
  int64_t arrived = 0;
  double now = 0.0;
  while (true) {
    bool have_event = !events_.empty();
    bool have_arrival = arrived < cfg_.horizon_jobs;
    if (!have_event && !have_arrival) break;
    if (have_arrival && (!have_event || next_arrival <= events_.top().time)) {
      now = next_arrival;
      Arrive(now);
      ++arrived;
      next_arrival = now - std::log(rng_.UniformOpenLow()) / rate;
      continue;
    }
    Event e = events_.top();
    events_.pop();
    if (e.version != servers_[e.server].version) continue;
    now = e.time;
    Complete(e.server, now);
  }
  for (auto& s : servers_) Advance(s, now);

  std::vector<double> lat, cost;
  double all_lat = 0.0;
  int64_t measured = 0;
  for (const Job& j : jobs_) {
    if (!j.done) continue;
    ++result_.jobs_completed;
    if (!j.measured) continue;
    ++measured;
    all_lat += j.done_at - j.arrival;
    if (j.probe) {
      lat.push_back(j.done_at - j.arrival);
      cost.push_back(j.cost);
    }
  }
  result_.job_latency_mean = measured > 0 ? all_lat / measured : 0.0;
  result_.mean_task_wait =
      waits_counted_ > 0 ? total_wait_ / static_cast<double>(waits_counted_)
                         : 0.0;
  double busy = 0.0;
  for (const auto& s : servers_) busy += s.busy;
  result_.utilization =
      now > 0.0 ? std::min(1.0, busy / (now * static_cast<double>(
                                                  cfg_.num_servers)))
                : 0.0;

  EmpiricalMetrics& m = result_.probe_metrics;
  m.trials = static_cast<int64_t>(lat.size());
  auto moments = [](const std::vector<double>& v, double* mean, double* sd) {
    double acc = 0.0;
    for (double x : v) acc += x;
    *mean = v.empty() ? 0.0 : acc / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - *mean) * (x - *mean);
    *sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1))
                       : 0.0;
  };
  if (!lat.empty()) {
    double rt = std::sqrt(static_cast<double>(lat.size()));
    moments(lat, &m.latency_mean, &m.latency_sd);
    m.latency_se = m.latency_sd / rt;
    moments(cost, &m.cost_cancel_mean, &m.cost_cancel_sd);
    m.cost_cancel_se = m.cost_cancel_sd / rt;
    m.cost_nocancel_mean = std::numeric_limits<double>::quiet_NaN();
    m.cost_nocancel_se = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> sorted = lat;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {0.5, 0.9, 0.99}) {
      auto rank = static_cast<int64_t>(
          std::ceil(p * static_cast<double>(sorted.size())));
      rank = std::clamp<int64_t>(rank, 1, static_cast<int64_t>(sorted.size()));
      m.latency_quantiles.emplace_back(p, sorted[rank - 1]);
    }
  }
  return std::move(result_);
}

}  // namespace

void ValidateClusterConfig(const ClusterConfig& c) {
  Require(c.num_servers >= 1, "num_servers must be >= 1");
  Require(c.num_servers <= std::numeric_limits<int32_t>::max(),
          "num_servers too large");
  Require(c.ps_limit >= 1, "ps_limit must be >= 1");
  Require(c.expansion_rate >= 1.0, "expansion rate r must be >= 1");
  Require(c.arrival_rate > 0.0 || (c.target_load > 0.0 && c.target_load < 1.0),
          "arrival_rate must be positive (or target_load in (0,1))");
  Require(c.task_count.max_k >= 1, "zipf max_k must be >= 1");
  Require(std::isfinite(c.task_count.exponent), "zipf exponent must be finite");
  Require(c.probe.every >= 0, "probe.every must be >= 0");
  Require(c.probe.every == 0 || (c.probe.k >= 1 && c.probe.size > 0.0),
          "probe job needs k >= 1 and positive size");
  Require(c.horizon_jobs >= 1, "horizon_jobs must be >= 1");
  Require(c.warmup_fraction >= 0.0 && c.warmup_fraction < 1.0,
          "warmup_fraction must lie in [0,1)");
  Require(c.max_queued_tasks >= 1, "max_queued_tasks must be >= 1");
  ValidateDist(c.task_size_dist);
}

double DerivedArrivalRate(const ClusterConfig& c) {
  ZipfTable zipf(c.task_count);
  double regular = zipf.Mean() * DistMean(c.task_size_dist);
  double work = regular;
  if (c.probe.every > 0) {
    double f = 1.0 / static_cast<double>(c.probe.every);
    work = (1.0 - f) * regular +
           f * static_cast<double>(c.probe.k) * c.probe.size;
  }
  return c.target_load * static_cast<double>(c.num_servers) / work;
}

ClusterResult RunCluster(const ClusterConfig& config, uint64_t seed) {
  ValidateClusterConfig(config);
  Cluster cluster(config, seed);
  return cluster.Run();
}

void ExportExecSamples(const ClusterResult& result, const std::string& path) {
  Require(!result.task_exec_samples.empty(),
          "no execution-time samples to export");
  WriteSampleFile(path, result.task_exec_samples);
}

}  // namespace laggard
