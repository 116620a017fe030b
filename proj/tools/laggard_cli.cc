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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "laggard/laggard.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;
constexpr int kExitIO = 5;

const char* kDistHelp =
    "Task time distribution, name:params. exp:MU | sexp:S,MU | pareto:S,A | "
    "tpareto:S,U,A | point:V | empirical:PATH (one sample per line)";

// Thrown to unwind with a particular exit code.
struct CliError {
  int code;
  std::string status;
  std::string message;
};

int ExitCodeFor(lg_status s) {
  switch (s) {
    case LG_OK: return kExitOk;
    case LG_ERR_CONVERGENCE:
    case LG_ERR_INSTABILITY: return kExitConvergence;
    case LG_ERR_IO: return kExitIO;
    case LG_ERR_INTERNAL: return kExitInternal;
    default: return kExitDomain;
  }
}

void Check(lg_status s) {
  if (s != LG_OK) {
    throw CliError{ExitCodeFor(s), lg_status_name(s), lg_last_error()};
  }
}

[[noreturn]] void Usage(const std::string& message) {
  throw CliError{kExitUsage, "usage", message};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using DistPtr = std::unique_ptr<lg_dist, Deleter<lg_dist, lg_dist_free>>;
using PolicyPtr =
    std::unique_ptr<lg_policy, Deleter<lg_policy, lg_policy_free>>;
using SimPtr = std::unique_ptr<lg_sim, Deleter<lg_sim, lg_sim_free>>;
using CurvePtr = std::unique_ptr<lg_curve, Deleter<lg_curve, lg_curve_free>>;
using ClusterConfigPtr =
    std::unique_ptr<lg_cluster_config,
                    Deleter<lg_cluster_config, lg_cluster_config_free>>;
using ClusterResultPtr =
    std::unique_ptr<lg_cluster_result,
                    Deleter<lg_cluster_result, lg_cluster_result_free>>;
using SamplesPtr =
    std::unique_ptr<lg_samples, Deleter<lg_samples, lg_samples_free>>;
using FitPtr = std::unique_ptr<lg_fit, Deleter<lg_fit, lg_fit_free>>;

// Takes ownership of a string returned by the library.
std::string Take(char* s) {
  std::string out = s == nullptr ? "" : s;
  lg_string_free(s);
  return out;
}

Json TakeJson(char* s) { return Json::parse(Take(s)); }

double ParseNumber(const std::string& text, const std::string& what) {
  if (text == "inf" || text == "Inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || std::isnan(v)) {
    Usage("cannot read " + what + " from '" + text + "'");
  }
  return v;
}

int64_t ParseInteger(const std::string& text, const std::string& what) {
  double v = ParseNumber(text, what);
  if (!std::isfinite(v) || v != std::floor(v)) {
    Usage(what + " must be an integer, got '" + text + "'");
  }
  return static_cast<int64_t>(v);
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// a:b (unit step, inclusive), a:b:step, or a comma list.
std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    auto parts = Split(text, ':');
    if (parts.size() != 2 && parts.size() != 3) {
      Usage("grid range must be a:b or a:b:step");
    }
    double a = ParseNumber(parts[0], "grid start");
    double b = ParseNumber(parts[1], "grid end");
    double step = parts.size() == 3 ? ParseNumber(parts[2], "grid step") : 1.0;
    if (!std::isfinite(a) || !std::isfinite(b) || !(step > 0.0) || b < a) {
      Usage("grid range needs finite a <= b and step > 0");
    }
    int64_t count = static_cast<int64_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 1000000) Usage("grid has too many points");
    for (int64_t i = 0; i < count; ++i) grid.push_back(a + step * i);
  } else {
    for (const auto& p : Split(text, ',')) {
      grid.push_back(ParseNumber(p, "grid value"));
    }
  }
  if (grid.empty()) Usage("grid is empty");
  return grid;
}

std::string OutDir() {
  const char* env = std::getenv("LAGGARD_OUT_DIR");
  return env == nullptr ? "" : env;
}

// Relative paths land under LAGGARD_OUT_DIR when it is set.
std::string ResolveOut(const std::string& path) {
  std::filesystem::path p(path);
  std::string dir = OutDir();
  if (p.is_absolute() || dir.empty()) return path;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw CliError{kExitIO, "io",
                   "cannot create output directory '" + dir + "'"};
  }
  return (std::filesystem::path(dir) / p).string();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitIO, "io", "cannot write '" + path + "'"};
  out << text;
  if (!out) throw CliError{kExitIO, "io", "write failed for '" + path + "'"};
}

void Emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    WriteFile(ResolveOut(out_path), text);
  }
}

struct PolicyFlags {
  int64_t k = 0;
  std::string redundancy = "none";
  std::string delta = "0";
  std::string launch = "auto";
  bool relaunch = false;
  std::string dist;
};

void AddPolicyFlags(CLI::App* cmd, PolicyFlags* f) {
  cmd->add_option("--k", f->k, "Number of tasks the job needs")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--redundancy", f->redundancy,
                  "none | rep:C (C extra copies per task) | coding[:N] "
                  "(N coded tasks in total; default k+1)")
      ->capture_default_str();
  cmd->add_option("--delta", f->delta,
                  "Time at which redundancy or relaunch starts; 'inf' for "
                  "never")
      ->capture_default_str();
  cmd->add_option("--launch", f->launch,
                  "When redundant tasks start: zero, delta, or auto (= delta)")
      ->check(CLI::IsMember({"auto", "zero", "delta"}))
      ->capture_default_str();
  cmd->add_flag("--relaunch", f->relaunch,
                "Relaunch every unfinished task at delta");
  cmd->add_option("--dist", f->dist, kDistHelp)->required();
}

PolicyPtr BuildPolicy(const PolicyFlags& f) {
  lg_policy* raw = nullptr;
  Check(lg_policy_new(f.k, &raw));
  PolicyPtr p(raw);
  const std::string& r = f.redundancy;
  if (r == "none") {
    Check(lg_policy_set_none(p.get()));
  } else if (r.rfind("rep:", 0) == 0) {
    Check(lg_policy_set_replication(p.get(),
                                    ParseInteger(r.substr(4), "replica count")));
  } else if (r == "coding") {
    Check(lg_policy_set_coding(p.get(), f.k + 1));
  } else if (r.rfind("coding:", 0) == 0) {
    Check(lg_policy_set_coding(p.get(),
                               ParseInteger(r.substr(7), "coded task count")));
  } else {
    Usage("--redundancy must be none, rep:C, coding or coding:N");
  }
  Check(lg_policy_set_delta(p.get(), ParseNumber(f.delta, "--delta")));
  Check(lg_policy_set_launch(
      p.get(), f.launch == "zero" ? LG_LAUNCH_AT_ZERO : LG_LAUNCH_AT_DELTA));
  Check(lg_policy_set_relaunch(p.get(), f.relaunch ? 1 : 0));
  return p;
}

DistPtr BuildDist(const std::string& text) {
  lg_dist* raw = nullptr;
  Check(lg_dist_parse(text.c_str(), &raw));
  return DistPtr(raw);
}

int RunAnalytic(const PolicyFlags& f, bool moments,
                const std::vector<double>& tail_at, const std::string& out) {
  PolicyPtr p = BuildPolicy(f);
  DistPtr d = BuildDist(f.dist);
  char* raw = nullptr;
  Check(lg_evaluate_json(p.get(), d.get(), &raw));
  Json j = TakeJson(raw);
  if (moments) {
    lg_metrics m{};
    Check(lg_zero_delay_moments(p.get(), d.get(), &m));
    j["second_moments"] = {{"latency_sd", m.latency_sd},
                           {"cost_sd", m.cost_sd}};
  }
  if (!tail_at.empty()) {
    Json tail = Json::array();
    for (double t : tail_at) {
      double v = 0.0;
      Check(lg_latency_tail(p.get(), d.get(), t, &v));
      tail.push_back({{"t", t}, {"survival", v}});
    }
    j["latency_tail"] = tail;
  }
  Emit(j, out);
  return kExitOk;
}

int RunSimulate(const PolicyFlags& f, const std::string& trials_text,
                uint64_t seed, int threads, const std::string& trials_csv,
                const std::string& out) {
  int64_t trials = ParseInteger(trials_text, "--trials");
  PolicyPtr p = BuildPolicy(f);
  DistPtr d = BuildDist(f.dist);
  lg_sim* raw_sim = nullptr;
  Check(lg_simulate(p.get(), d.get(), trials, seed, threads,
                    trials_csv.empty() ? 0 : 1, &raw_sim));
  SimPtr sim(raw_sim);
  char* raw = nullptr;
  Check(lg_policy_json(p.get(), &raw));
  Json j;
  j["policy"] = TakeJson(raw);
  Check(lg_dist_describe(d.get(), &raw));
  j["dist"] = Take(raw);
  j["seed"] = seed;
  Check(lg_sim_json(sim.get(), &raw));
  j["empirical"] = TakeJson(raw);

  lg_metrics analytic{};
  lg_status s = lg_evaluate(p.get(), d.get(), &analytic);
  if (s == LG_OK) {
    int all_pass = 0;
    Check(lg_compare_json(&analytic, sim.get(), &all_pass, &raw));
    j["compare"] = TakeJson(raw);
  } else if (ExitCodeFor(s) == kExitDomain) {
    // Simulation still stands when no closed form covers the policy.
    j["compare"] = {{"available", false},
                    {"status", lg_status_name(s)},
                    {"message", lg_last_error()}};
  } else {
    Check(s);
  }
  if (!trials_csv.empty()) {
    Check(lg_sim_write_trials_csv(sim.get(), ResolveOut(trials_csv).c_str()));
  }
  Emit(j, out);
  return kExitOk;
}

int RunFrontier(const PolicyFlags& f, const std::string& knob,
                const std::string& grid_text, const std::string& out) {
  std::vector<double> grid = ParseGrid(grid_text);
  PolicyFlags base = f;
  // A knob-driven coding sweep does not need a starting N.
  if (knob == "n" && base.redundancy == "none") base.redundancy = "coding";
  if (knob == "c" && base.redundancy == "none") base.redundancy = "rep:1";
  PolicyPtr p = BuildPolicy(base);
  DistPtr d = BuildDist(f.dist);
  lg_curve* raw = nullptr;
  Check(lg_sweep(p.get(), d.get(), knob.c_str(), grid.data(), grid.size(),
                 &raw));
  CurvePtr curve(raw);
  std::string csv_path =
      ResolveOut(out.empty() ? "frontier_" + knob + ".csv" : out);
  std::filesystem::path json_path(csv_path);
  json_path.replace_extension(".json");
  Check(lg_curve_write_csv(curve.get(), csv_path.c_str()));
  Check(lg_curve_write_json(curve.get(), json_path.string().c_str()));
  size_t n = 0;
  size_t failed = 0;
  Check(lg_curve_size(curve.get(), &n));
  for (size_t i = 0; i < n; ++i) {
    double x = 0.0;
    lg_metrics m{};
    int ok = 0;
    Check(lg_curve_point(curve.get(), i, &x, &m, &ok));
    if (!ok) ++failed;
  }
  Json j = {{"csv", csv_path},
            {"json", json_path.string()},
            {"points", n},
            {"failed_points", failed}};
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int RunCluster(const std::string& config_path, double r, int64_t horizon,
               uint64_t seed, const std::string& samples_out,
               const std::string& out) {
  lg_cluster_config* raw_cfg = nullptr;
  if (config_path.empty()) {
    Check(lg_cluster_config_default(&raw_cfg));
  } else {
    Check(lg_cluster_config_load(config_path.c_str(), &raw_cfg));
  }
  ClusterConfigPtr cfg(raw_cfg);
  if (r > 0.0) Check(lg_cluster_config_set_expansion(cfg.get(), r));
  if (horizon > 0) Check(lg_cluster_config_set_horizon(cfg.get(), horizon));
  lg_cluster_result* raw_res = nullptr;
  Check(lg_cluster_run(cfg.get(), seed, &raw_res));
  ClusterResultPtr res(raw_res);
  char* raw = nullptr;
  Json j;
  Check(lg_cluster_config_json(cfg.get(), &raw));
  j["config"] = TakeJson(raw);
  j["seed"] = seed;
  Check(lg_cluster_result_json(res.get(), &raw));
  j["result"] = TakeJson(raw);
  if (!samples_out.empty()) {
    Check(lg_cluster_export_samples(res.get(), ResolveOut(samples_out).c_str()));
  }
  Emit(j, out);
  return kExitOk;
}

FitPtr FitWith(const lg_samples* s, const std::string& family) {
  lg_fit* raw = nullptr;
  Check(lg_fit_samples(
      s, family == "tpareto" ? LG_FIT_TRUNCATED_PARETO : LG_FIT_PARETO, &raw));
  return FitPtr(raw);
}

int RunFit(const std::string& path, const std::string& family,
           const std::string& out) {
  lg_samples* raw_s = nullptr;
  Check(lg_samples_read(path.c_str(), &raw_s));
  SamplesPtr samples(raw_s);
  FitPtr fit = FitWith(samples.get(), family);
  char* raw = nullptr;
  Check(lg_fit_json(fit.get(), samples.get(), &raw));
  Json j;
  j["samples_file"] = path;
  j["fit"] = TakeJson(raw);
  Emit(j, out);
  return kExitOk;
}

struct TraceFlags {
  std::string events;
  std::string google;
  std::string synthetic;
  int64_t jobs = 200;
  int64_t tasks = 20;
  uint64_t seed = 42;
  int64_t filter_k = -1;
  std::string grid;
  int points = 20;
  std::string events_out;
  std::string samples_out;
  std::string family = "pareto";
  std::string out;
};

std::vector<double> LogGrid(const lg_samples* s, int points) {
  const double* v = nullptr;
  size_t n = 0;
  Check(lg_samples_data(s, &v, &n));
  if (n == 0) {
    throw CliError{kExitDomain, "domain", "trace yielded no execution times"};
  }
  double lo = v[0];
  double hi = v[0];
  for (size_t i = 1; i < n; ++i) {
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
  }
  std::vector<double> grid;
  if (points <= 1 || hi <= lo) return {lo};
  double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(lo * std::exp(step * i));
  grid.back() = hi;
  return grid;
}

int RunTraceTail(const TraceFlags& f) {
  int sources = !f.events.empty() + !f.google.empty() + !f.synthetic.empty();
  if (sources != 1) {
    Usage("trace-tail needs exactly one of --events, --google, --synthetic");
  }
  Json j;
  std::string events = f.events;
  char* raw = nullptr;
  if (!f.google.empty()) {
    events = ResolveOut(f.events_out.empty() ? "events.csv" : f.events_out);
    Check(lg_trace_convert_google(f.google.c_str(), events.c_str(), &raw));
    j["convert"] = TakeJson(raw);
  } else if (!f.synthetic.empty()) {
    events = ResolveOut(f.events_out.empty() ? "events.csv" : f.events_out);
    Check(lg_trace_synthetic(f.synthetic.c_str(), f.jobs, f.tasks, f.seed,
                             events.c_str()));
    j["synthetic"] = {{"dist", f.synthetic},
                      {"jobs", f.jobs},
                      {"tasks_per_job", f.tasks},
                      {"seed", f.seed}};
  }
  j["events"] = events;
  lg_samples* raw_s = nullptr;
  Check(lg_trace_exec_times(events.c_str(), f.filter_k, &raw_s, &raw));
  SamplesPtr samples(raw_s);
  j["extract"] = TakeJson(raw);

  std::vector<double> grid =
      f.grid.empty() ? LogGrid(samples.get(), f.points) : ParseGrid(f.grid);
  std::string tail_path = ResolveOut(f.out.empty() ? "tail.csv" : f.out);
  Check(lg_trace_tail_csv(samples.get(), grid.data(), grid.size(),
                          tail_path.c_str()));
  j["tail_csv"] = tail_path;
  if (!f.samples_out.empty()) {
    std::string path = ResolveOut(f.samples_out);
    Check(lg_samples_write(samples.get(), path.c_str()));
    j["samples_file"] = path;
  }
  if (f.family != "none") {
    FitPtr fit = FitWith(samples.get(), f.family);
    Check(lg_fit_json(fit.get(), samples.get(), &raw));
    j["fit"] = TakeJson(raw);
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

void PrintError(const CliError& e) {
  Json j = {{"error",
             {{"status", e.status},
              {"message", e.message},
              {"exit_code", e.code}}}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "laggard: cost and latency of straggler mitigation policies for jobs "
      "of k parallel tasks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lg_version()));
  app.footer(
      "Relative output paths are placed under $LAGGARD_OUT_DIR when set.\n"
      "Exit codes: 0 ok, 2 usage, 3 domain error, 4 convergence or "
      "instability, 5 IO, 1 internal.");

  PolicyFlags policy;
  std::string out;
  std::string trials = "100000";
  uint64_t seed = 42;
  int threads = 1;

  auto* analytic =
      app.add_subcommand("analytic", "Evaluate one policy in closed form");
  AddPolicyFlags(analytic, &policy);
  bool moments = false;
  std::vector<double> tail_at;
  analytic->add_flag("--moments", moments,
                     "Add zero-delay standard deviations");
  analytic->add_option("--tail-at", tail_at,
                       "Report Pr{latency > t} at these times")
      ->delimiter(',');
  analytic->add_option("--out", out, "Write JSON here instead of stdout");

  auto* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo estimate and comparison with the closed form");
  AddPolicyFlags(simulate, &policy);
  std::string trials_csv;
  simulate->add_option("--trials", trials, "Number of simulated jobs")
      ->capture_default_str();
  simulate->add_option("--seed", seed, "Random seed")->capture_default_str();
  simulate->add_option("--threads", threads,
                       "Worker threads (0 = all cores); results do not "
                       "depend on it")
      ->capture_default_str();
  simulate->add_option("--trials-csv", trials_csv,
                       "Also write per-trial values to this CSV");
  simulate->add_option("--out", out, "Write JSON here instead of stdout");

  auto* frontier = app.add_subcommand(
      "frontier", "Sweep one knob and write the cost/latency curve");
  AddPolicyFlags(frontier, &policy);
  std::string knob;
  std::string grid;
  frontier->add_option("--knob", knob, "delta | c | n | r")
      ->required()
      ->check(CLI::IsMember({"delta", "c", "n", "r"}));
  frontier->add_option("--grid", grid, "a:b, a:b:step, or v1,v2,...")
      ->required();
  frontier->add_option("--out", out,
                       "CSV path (default frontier_<knob>.csv); JSON is "
                       "written alongside");

  auto* cluster = app.add_subcommand(
      "cluster", "Discrete-event simulation of a processor-sharing cluster");
  std::string config_path;
  double r = 0.0;
  int64_t horizon = 0;
  std::string samples_out;
  cluster->add_option("--config", config_path, "Cluster config JSON");
  cluster->add_option("--r", r, "Task expansion rate (>= 1)");
  cluster->add_option("--horizon", horizon, "Number of arriving jobs");
  cluster->add_option("--seed", seed, "Random seed")->capture_default_str();
  cluster->add_option("--samples-out", samples_out,
                      "Write probe task execution times here");
  cluster->add_option("--out", out, "Write JSON here instead of stdout");

  auto* fit = app.add_subcommand("fit", "Fit a Pareto tail to samples");
  std::string samples_path;
  std::string family = "pareto";
  fit->add_option("--samples", samples_path, "Sample file")->required();
  fit->add_option("--family", family, "pareto | tpareto")
      ->check(CLI::IsMember({"pareto", "tpareto"}))
      ->capture_default_str();
  fit->add_option("--out", out, "Write JSON here instead of stdout");

  auto* trace = app.add_subcommand(
      "trace-tail", "Execution-time tail from a task event trace");
  TraceFlags tf;
  trace->add_option("--events", tf.events,
                    "Event CSV: job_id,task_id,event,timestamp");
  trace->add_option("--google", tf.google,
                    "Google cluster task_events CSV to convert first");
  trace->add_option("--synthetic", tf.synthetic,
                    std::string("Generate a trace from this distribution. ") +
                        kDistHelp);
  trace->add_option("--jobs", tf.jobs, "Synthetic jobs")->capture_default_str();
  trace->add_option("--tasks", tf.tasks, "Synthetic tasks per job")
      ->capture_default_str();
  trace->add_option("--seed", tf.seed, "Synthetic seed")->capture_default_str();
  trace->add_option("--filter-k", tf.filter_k,
                    "Keep only jobs with exactly this many tasks");
  trace->add_option("--grid", tf.grid,
                    "Tail grid; default is log-spaced over the samples");
  trace->add_option("--points", tf.points, "Default grid size")
      ->capture_default_str();
  trace->add_option("--events-out", tf.events_out,
                    "Where converted or generated events go (events.csv)");
  trace->add_option("--samples-out", tf.samples_out,
                    "Write execution times as a sample file");
  trace->add_option("--family", tf.family, "pareto | tpareto | none")
      ->check(CLI::IsMember({"pareto", "tpareto", "none"}))
      ->capture_default_str();
  trace->add_option("--out", tf.out, "Tail CSV path (default tail.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError({kExitUsage, "usage", e.what()});
    return kExitUsage;
  }

  try {
    if (*analytic) return RunAnalytic(policy, moments, tail_at, out);
    if (*simulate) {
      return RunSimulate(policy, trials, seed, threads, trials_csv, out);
    }
    if (*frontier) return RunFrontier(policy, knob, grid, out);
    if (*cluster) {
      return RunCluster(config_path, r, horizon, seed, samples_out, out);
    }
    if (*fit) return RunFit(samples_path, family, out);
    if (*trace) return RunTraceTail(tf);
  } catch (const CliError& e) {
    PrintError(e);
    return e.code;
  } catch (const std::exception& e) {
    PrintError({kExitInternal, "internal", e.what()});
    return kExitInternal;
  }
  return kExitUsage;
}
