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

#ifndef LAGGARD_CLUSTER_SIM_H
#define LAGGARD_CLUSTER_SIM_H

#include <cstdint>
#include <string>
#include <vector>

#include "laggard/distributions.h"
#include "laggard/monte_carlo.h"

namespace laggard {

struct ZipfParams {
  int64_t max_k = 100;
  double exponent = 1.5;
};

struct ProbeJob {
  int64_t k = 20;
  double size = 1.0;
  // Every n-th arrival is a probe; 0 disables probes.
  int64_t every = 50;
};

struct ClusterConfig {
  int64_t num_servers = 50;
  int64_t ps_limit = 8;
  // Non-positive means "derive from target_load".
  double arrival_rate = 0.0;
  double target_load = 0.6;
  TaskDist task_size_dist = TruncParetoDist{1.0, 1e10, 1.1};
  ZipfParams task_count;
  // Independent size per task; false shares one size across a job.
  bool size_per_task = true;
  double expansion_rate = 1.0;
  ProbeJob probe;
  int64_t horizon_jobs = 60000;
  double warmup_fraction = 0.1;
  bool cost_includes_wait = false;
  int64_t max_queued_tasks = 2000000;
  bool audit = false;
};

void ValidateClusterConfig(const ClusterConfig& config);

// Jobs per unit time giving the target offered load at r = 1.
double DerivedArrivalRate(const ClusterConfig& config);

struct ClusterResult {
  EmpiricalMetrics probe_metrics;
  std::vector<double> task_exec_samples;
  double utilization = 0.0;
  int64_t jobs_completed = 0;
  double arrival_rate = 0.0;
  double mean_task_wait = 0.0;
  double job_latency_mean = 0.0;
  // Audit counters, filled when ClusterConfig::audit is set.
  int64_t work_conservation_violations = 0;
  int64_t removal_violations = 0;
};

ClusterResult RunCluster(const ClusterConfig& config, uint64_t seed);

void ExportExecSamples(const ClusterResult& result, const std::string& path);

}  // namespace laggard

#endif  // LAGGARD_CLUSTER_SIM_H
