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

#include "laggard/serialize.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "laggard/errors.h"

namespace laggard {

namespace {

std::string Fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* RedName(RedKind k) {
  switch (k) {
    case RedKind::kNone: return "none";
    case RedKind::kReplication: return "replication";
    case RedKind::kCoding: return "coding";
  }
  return "none";
}

}  // namespace

Json Number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json ToJson(const PolicyConfig& p) {
  Json j;
  j["k"] = p.k;
  j["redundancy"] = RedName(p.redundancy.kind);
  if (p.redundancy.kind == RedKind::kReplication) j["c"] = p.redundancy.c;
  if (p.redundancy.kind == RedKind::kCoding) j["n"] = p.redundancy.n;
  j["delta"] = std::isinf(p.delta) ? Json("inf") : Json(p.delta);
  j["launch"] = p.red_launch == RedLaunch::kAtZero ? "zero" : "delta";
  j["relaunch"] = p.relaunch_at_delta;
  return j;
}

Json ToJson(const Metrics& m) {
  Json j;
  j["latency_mean"] = Number(m.latency_mean);
  j["cost_cancel_mean"] = Number(m.cost_cancel_mean);
  j["cost_nocancel_mean"] = Number(m.cost_nocancel_mean);
  j["latency_sd"] = Number(m.latency_sd);
  j["cost_sd"] = Number(m.cost_sd);
  j["approx"] = ApproxFlagsLabel(m.approx_flags);
  return j;
}

Json ToJson(const EmpiricalMetrics& m) {
  Json j;
  j["trials"] = m.trials;
  j["latency_mean"] = Number(m.latency_mean);
  j["latency_se"] = Number(m.latency_se);
  j["latency_sd"] = Number(m.latency_sd);
  j["cost_cancel_mean"] = Number(m.cost_cancel_mean);
  j["cost_cancel_se"] = Number(m.cost_cancel_se);
  j["cost_cancel_sd"] = Number(m.cost_cancel_sd);
  j["cost_nocancel_mean"] = Number(m.cost_nocancel_mean);
  j["cost_nocancel_se"] = Number(m.cost_nocancel_se);
  Json q = Json::object();
  for (const auto& [p, v] : m.latency_quantiles) {
    char key[32];
    std::snprintf(key, sizeof(key), "%g", p);
    q[key] = Number(v);
  }
  j["latency_quantiles"] = q;
  return j;
}

Json ToJson(const CompareReport& r) {
  Json fields = Json::array();
  for (const auto& f : r.fields) {
    if (!f.present) continue;
    Json x;
    x["field"] = f.field;
    x["rule"] = f.approx ? "relative_5pct" : "z_within_3";
    x["analytic"] = Number(f.analytic);
    x["empirical"] = Number(f.empirical);
    x["se"] = Number(f.se);
    x["z"] = Number(f.z);
    x["rel_err"] = Number(f.rel_err);
    x["pass"] = f.pass;
    fields.push_back(x);
  }
  Json j;
  j["all_pass"] = r.all_pass;
  j["fields"] = fields;
  return j;
}

Json ToJson(const TradeoffCurve& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) {
    Json x = ToJson(p.metrics);
    x["knob"] = p.knob;
    if (!p.error.empty()) x["error"] = p.error;
    pts.push_back(x);
  }
  Json j;
  j["knob"] = c.knob_name;
  j["points"] = pts;
  return j;
}

Json ToJson(const ClusterConfig& c) {
  Json j;
  j["num_servers"] = c.num_servers;
  j["ps_limit"] = c.ps_limit;
  j["arrival_rate"] = c.arrival_rate;
  j["target_load"] = c.target_load;
  j["task_size_dist"] = DescribeDist(c.task_size_dist);
  j["size_per_task"] = c.size_per_task;
  j["zipf"] = {{"max_k", c.task_count.max_k},
               {"exponent", c.task_count.exponent}};
  j["expansion_rate"] = c.expansion_rate;
  j["probe"] = {{"k", c.probe.k},
                {"size", c.probe.size},
                {"every", c.probe.every}};
  j["horizon_jobs"] = c.horizon_jobs;
  j["warmup_fraction"] = c.warmup_fraction;
  j["cost_includes_wait"] = c.cost_includes_wait;
  j["max_queued_tasks"] = c.max_queued_tasks;
  j["audit"] = c.audit;
  return j;
}

Json ToJson(const ClusterResult& r) {
  Json j;
  j["probe"] = ToJson(r.probe_metrics);
  j["exec_samples"] = r.task_exec_samples.size();
  j["utilization"] = Number(r.utilization);
  j["jobs_completed"] = r.jobs_completed;
  j["arrival_rate"] = Number(r.arrival_rate);
  j["mean_task_wait"] = Number(r.mean_task_wait);
  j["job_latency_mean"] = Number(r.job_latency_mean);
  j["work_conservation_violations"] = r.work_conservation_violations;
  j["removal_violations"] = r.removal_violations;
  return j;
}

Json ToJson(const FitResult& f) {
  Json j;
  j["dist"] = DescribeDist(f.dist);
  std::visit(
      [&j](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ParetoDist>) {
          j["family"] = "pareto";
          j["s"] = d.s;
          j["alpha"] = d.alpha;
        } else if constexpr (std::is_same_v<T, TruncParetoDist>) {
          j["family"] = "tpareto";
          j["s"] = d.s;
          j["u"] = d.u;
          j["alpha"] = d.alpha;
        }
      },
      f.dist);
  j["log_likelihood"] = Number(f.log_likelihood);
  j["n_samples"] = f.n_samples;
  return j;
}

Json ToJson(const GoodnessReport& g) {
  Json pts = Json::array();
  for (const auto& p : g.tail_points) {
    pts.push_back({{"t", p.t}, {"empirical", p.empirical}, {"fitted", p.fitted}});
  }
  Json j;
  j["ks_statistic"] = g.ks_statistic;
  j["tail_points"] = pts;
  return j;
}

Json ToJson(const ExecTimes& e) {
  Json j;
  j["samples"] = e.times.size();
  j["dropped"] = e.dropped;
  j["inverted"] = e.inverted;
  j["filtered"] = e.filtered;
  return j;
}

Json ToJson(const ParseReport& r) {
  Json errs = Json::array();
  for (const auto& e : r.errors) {
    errs.push_back({{"line", e.line}, {"message", e.message}});
  }
  Json j;
  j["rows"] = r.rows;
  j["errors"] = errs;
  return j;
}

ClusterConfig ClusterConfigFromJson(const Json& j) {
  Require(j.is_object(), "cluster config must be a JSON object");
  ClusterConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "num_servers") {
        c.num_servers = v.get<int64_t>();
      } else if (key == "ps_limit") {
        c.ps_limit = v.get<int64_t>();
      } else if (key == "arrival_rate") {
        c.arrival_rate = v.get<double>();
      } else if (key == "target_load") {
        c.target_load = v.get<double>();
      } else if (key == "task_size_dist") {
        c.task_size_dist = ParseDist(v.get<std::string>());
      } else if (key == "size_per_task") {
        c.size_per_task = v.get<bool>();
      } else if (key == "zipf") {
        if (v.contains("max_k")) c.task_count.max_k = v["max_k"].get<int64_t>();
        if (v.contains("exponent")) {
          c.task_count.exponent = v["exponent"].get<double>();
        }
      } else if (key == "expansion_rate") {
        c.expansion_rate = v.get<double>();
      } else if (key == "probe") {
        if (v.contains("k")) c.probe.k = v["k"].get<int64_t>();
        if (v.contains("size")) c.probe.size = v["size"].get<double>();
        if (v.contains("every")) c.probe.every = v["every"].get<int64_t>();
      } else if (key == "horizon_jobs") {
        c.horizon_jobs = v.get<int64_t>();
      } else if (key == "warmup_fraction") {
        c.warmup_fraction = v.get<double>();
      } else if (key == "cost_includes_wait") {
        c.cost_includes_wait = v.get<bool>();
      } else if (key == "max_queued_tasks") {
        c.max_queued_tasks = v.get<int64_t>();
      } else if (key == "audit") {
        c.audit = v.get<bool>();
      } else {
        Fail(ErrorKind::kDomain, "unknown cluster config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kDomain, std::string("bad cluster config: ") + e.what());
  }
  ValidateClusterConfig(c);
  return c;
}

ClusterConfig LoadClusterConfig(const std::string& path) {
  std::string text = ReadTextFile(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kDomain,
         "cluster config '" + path + "' is not valid JSON: " + e.what());
  }
  return ClusterConfigFromJson(j);
}

void WriteCurveCsv(std::ostream& out, const TradeoffCurve& c) {
  out << c.knob_name
      << ",latency_mean,cost_cancel_mean,cost_nocancel_mean,latency_sd,"
         "cost_sd,approx,error\n";
  for (const auto& p : c.points) {
    const Metrics& m = p.metrics;
    out << Fmt(p.knob) << "," << Fmt(m.latency_mean) << ","
        << Fmt(m.cost_cancel_mean) << "," << Fmt(m.cost_nocancel_mean) << ","
        << Fmt(m.latency_sd) << "," << Fmt(m.cost_sd) << ","
        << ApproxFlagsLabel(m.approx_flags) << ",";
    if (!p.error.empty()) {
      std::string e = p.error;
      for (char& ch : e) {
        if (ch == '"') ch = '\'';
      }
      out << '"' << e << '"';
    }
    out << "\n";
  }
}

void WriteTrialsCsv(std::ostream& out, const EmpiricalMetrics& m) {
  Require(!m.trial_latency.empty(), "per-trial values were not kept");
  out << "trial,latency,cost_cancel,cost_nocancel\n";
  for (size_t i = 0; i < m.trial_latency.size(); ++i) {
    out << i << "," << Fmt(m.trial_latency[i]) << ","
        << Fmt(m.trial_cost_cancel[i]) << "," << Fmt(m.trial_cost_nocancel[i])
        << "\n";
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIO, "cannot write '" + path + "'");
  out << text;
  if (!out) Fail(ErrorKind::kIO, "write failed for '" + path + "'");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIO, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace laggard
