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

#include "laggard/laggard.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "laggard/analytic_models.h"
#include "laggard/cluster_sim.h"
#include "laggard/errors.h"
#include "laggard/fitting.h"
#include "laggard/monte_carlo.h"
#include "laggard/serialize.h"
#include "laggard/trace.h"

using namespace laggard;

struct lg_dist {
  TaskDist dist;
};
struct lg_policy {
  PolicyConfig config;
};
struct lg_sim {
  EmpiricalMetrics metrics;
};
struct lg_curve {
  TradeoffCurve curve;
};
struct lg_cluster_config {
  ClusterConfig config;
};
struct lg_cluster_result {
  ClusterResult result;
};
struct lg_samples {
  std::vector<double> values;
};
struct lg_fit {
  FitResult fit;
};

namespace {

thread_local std::string g_last_error;

lg_status StatusOf(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return LG_ERR_DOMAIN;
    case ErrorKind::kPole: return LG_ERR_POLE;
    case ErrorKind::kDivergence: return LG_ERR_DIVERGENCE;
    case ErrorKind::kDegenerate: return LG_ERR_DEGENERATE;
    case ErrorKind::kInfiniteMoment: return LG_ERR_INFINITE_MOMENT;
    case ErrorKind::kEvaluation: return LG_ERR_EVALUATION;
    case ErrorKind::kUnsupported: return LG_ERR_UNSUPPORTED;
    case ErrorKind::kConvergence: return LG_ERR_CONVERGENCE;
    case ErrorKind::kInstability: return LG_ERR_INSTABILITY;
    case ErrorKind::kIO: return LG_ERR_IO;
  }
  return LG_ERR_INTERNAL;
}

template <class F>
lg_status Guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return LG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return StatusOf(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LG_ERR_INTERNAL;
  }
}

struct NullArg {};

template <class... P>
void NeedAll(P*... ptrs) {
  if (((ptrs == nullptr) || ...)) {
    throw NullArg{};
  }
}

template <class F>
lg_status Call(F&& body) {
  try {
    return Guard(body);
  } catch (const NullArg&) {
    g_last_error = "required pointer argument is NULL";
    return LG_ERR_NULL_ARGUMENT;
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lg_metrics ToC(const Metrics& m) {
  return {m.latency_mean,       m.cost_cancel_mean, m.cost_nocancel_mean,
          m.latency_sd,         m.cost_sd,          m.approx_flags};
}

Metrics FromC(const lg_metrics& m) {
  Metrics out;
  out.latency_mean = m.latency_mean;
  out.cost_cancel_mean = m.cost_cancel_mean;
  out.cost_nocancel_mean = m.cost_nocancel_mean;
  out.latency_sd = m.latency_sd;
  out.cost_sd = m.cost_sd;
  out.approx_flags = m.approx_flags;
  return out;
}

lg_empirical ToC(const EmpiricalMetrics& m) {
  lg_empirical e{};
  e.trials = m.trials;
  e.latency_mean = m.latency_mean;
  e.latency_se = m.latency_se;
  e.latency_sd = m.latency_sd;
  e.cost_cancel_mean = m.cost_cancel_mean;
  e.cost_cancel_se = m.cost_cancel_se;
  e.cost_cancel_sd = m.cost_cancel_sd;
  e.cost_nocancel_mean = m.cost_nocancel_mean;
  e.cost_nocancel_se = m.cost_nocancel_se;
  double nan = std::numeric_limits<double>::quiet_NaN();
  e.latency_q50 = e.latency_q90 = e.latency_q99 = nan;
  for (const auto& [p, v] : m.latency_quantiles) {
    if (p == 0.5) e.latency_q50 = v;
    if (p == 0.9) e.latency_q90 = v;
    if (p == 0.99) e.latency_q99 = v;
  }
  return e;
}

template <class T>
T* Make(T value) {
  return new T(std::move(value));
}

}  // namespace

extern "C" {

const char* lg_version(void) { return "1.0.0"; }

const char* lg_last_error(void) { return g_last_error.c_str(); }

const char* lg_status_name(lg_status status) {
  switch (status) {
    case LG_OK: return "ok";
    case LG_ERR_DOMAIN: return "domain";
    case LG_ERR_POLE: return "pole";
    case LG_ERR_DIVERGENCE: return "divergence";
    case LG_ERR_DEGENERATE: return "degenerate";
    case LG_ERR_INFINITE_MOMENT: return "infinite_moment";
    case LG_ERR_EVALUATION: return "evaluation";
    case LG_ERR_UNSUPPORTED: return "unsupported";
    case LG_ERR_CONVERGENCE: return "convergence";
    case LG_ERR_INSTABILITY: return "instability";
    case LG_ERR_IO: return "io";
    case LG_ERR_NULL_ARGUMENT: return "null_argument";
    case LG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void lg_string_free(char* s) { std::free(s); }

lg_status lg_dist_parse(const char* text, lg_dist** out) {
  return Call([&] {
    NeedAll(text, out);
    TaskDist d = ParseDist(text);
    ValidateDist(d);
    *out = Make(lg_dist{d});
  });
}

lg_status lg_dist_from_samples(const lg_samples* samples, lg_dist** out) {
  return Call([&] {
    NeedAll(samples, out);
    *out = Make(lg_dist{EmpiricalFromSamples(samples->values)});
  });
}

lg_status lg_dist_describe(const lg_dist* dist, char** out) {
  return Call([&] {
    NeedAll(dist, out);
    *out = Dup(DescribeDist(dist->dist));
  });
}

lg_status lg_dist_mean(const lg_dist* dist, double* out) {
  return Call([&] {
    NeedAll(dist, out);
    *out = DistMean(dist->dist);
  });
}

lg_status lg_dist_tail(const lg_dist* dist, double t, double* out) {
  return Call([&] {
    NeedAll(dist, out);
    *out = Tail(dist->dist, t);
  });
}

void lg_dist_free(lg_dist* dist) { delete dist; }

lg_status lg_policy_new(int64_t k, lg_policy** out) {
  return Call([&] {
    NeedAll(out);
    Require(k >= 1, "task count k must be >= 1");
    lg_policy p;
    p.config.k = k;
    *out = Make(p);
  });
}

lg_status lg_policy_set_none(lg_policy* p) {
  return Call([&] {
    NeedAll(p);
    p->config.redundancy = Redundancy::None();
  });
}

lg_status lg_policy_set_replication(lg_policy* p, int64_t c) {
  return Call([&] {
    NeedAll(p);
    Require(c >= 1, "replication needs c >= 1");
    p->config.redundancy = Redundancy::Replication(c);
  });
}

lg_status lg_policy_set_coding(lg_policy* p, int64_t n) {
  return Call([&] {
    NeedAll(p);
    Require(n > p->config.k, "coding needs n > k");
    p->config.redundancy = Redundancy::Coding(n);
  });
}

lg_status lg_policy_set_delta(lg_policy* p, double delta) {
  return Call([&] {
    NeedAll(p);
    Require(!std::isnan(delta) && delta >= 0.0, "delta must be >= 0");
    p->config.delta = delta;
  });
}

lg_status lg_policy_set_launch(lg_policy* p, lg_launch launch) {
  return Call([&] {
    NeedAll(p);
    Require(launch == LG_LAUNCH_AT_DELTA || launch == LG_LAUNCH_AT_ZERO,
            "unknown launch mode");
    p->config.red_launch =
        launch == LG_LAUNCH_AT_ZERO ? RedLaunch::kAtZero : RedLaunch::kAtDelta;
  });
}

lg_status lg_policy_set_relaunch(lg_policy* p, int relaunch) {
  return Call([&] {
    NeedAll(p);
    p->config.relaunch_at_delta = relaunch != 0;
  });
}

lg_status lg_policy_json(const lg_policy* p, char** out) {
  return Call([&] {
    NeedAll(p, out);
    *out = Dup(ToJson(p->config).dump());
  });
}

void lg_policy_free(lg_policy* p) { delete p; }

lg_status lg_evaluate(const lg_policy* p, const lg_dist* dist,
                      lg_metrics* out) {
  return Call([&] {
    NeedAll(p, dist, out);
    *out = ToC(Evaluate(p->config, dist->dist));
  });
}

lg_status lg_evaluate_json(const lg_policy* p, const lg_dist* dist,
                           char** out) {
  return Call([&] {
    NeedAll(p, dist, out);
    Metrics m = Evaluate(p->config, dist->dist);
    Json j;
    j["policy"] = ToJson(p->config);
    j["dist"] = DescribeDist(dist->dist);
    j["metrics"] = ToJson(m);
    *out = Dup(j.dump(2));
  });
}

lg_status lg_zero_delay_moments(const lg_policy* p, const lg_dist* dist,
                                lg_metrics* out) {
  return Call([&] {
    NeedAll(p, dist, out);
    *out = ToC(
        ZeroDelaySecondMoments(p->config.k, p->config.redundancy, dist->dist));
  });
}

lg_status lg_latency_tail(const lg_policy* p, const lg_dist* dist, double t,
                          double* out) {
  return Call([&] {
    NeedAll(p, dist, out);
    *out = LatencyTail(p->config, dist->dist, t);
  });
}

lg_status lg_relaunch_optimum_eval(int64_t k, double s, double alpha,
                                   lg_relaunch_optimum* out) {
  return Call([&] {
    NeedAll(out);
    RelaunchOpt o = RelaunchOptimum(k, s, alpha);
    *out = {o.delta_star, o.p_star, o.latency_norel, o.sufficient_T ? 1 : 0,
            o.sufficient_alpha ? 1 : 0};
  });
}

lg_status lg_no_cost_replication_eval(int64_t k, double s, double alpha,
                                      lg_no_cost_replication* out) {
  return Call([&] {
    NeedAll(out);
    NoCostReplication r = LatencyNoCostReplication(k, s, alpha);
    *out = {r.feasible ? 1 : 0, r.c_max, r.t_min};
  });
}

lg_status lg_no_cost_coding_eval(int64_t k, double s, double alpha,
                                 lg_no_cost_coding* out) {
  return Call([&] {
    NeedAll(out);
    NoCostCoding r = LatencyNoCostCoding(k, s, alpha);
    *out = {r.n_max, r.t_min, r.sufficient_ok ? 1 : 0, r.necessary_ok ? 1 : 0,
            r.t_min_bound};
  });
}

lg_status lg_tail_change(int64_t k, double r_i, double r_j, double alpha_i,
                         double alpha_j, lg_tail_kind kind,
                         lg_verdict* verdict, double* threshold) {
  return Call([&] {
    NeedAll(verdict, threshold);
    TailChange t = TailChangeVerdict(
        k, r_i, r_j, alpha_i, alpha_j,
        kind == LG_TAIL_REPLICATED ? TailChangeKind::kReplicated
                                   : TailChangeKind::kCoded);
    switch (t.verdict) {
      case Verdict::kReduce: *verdict = LG_VERDICT_REDUCE; break;
      case Verdict::kIncrease: *verdict = LG_VERDICT_INCREASE; break;
      case Verdict::kUnchanged: *verdict = LG_VERDICT_UNCHANGED; break;
      case Verdict::kInconclusive: *verdict = LG_VERDICT_INCONCLUSIVE; break;
    }
    *threshold = t.approx_threshold;
  });
}

lg_status lg_simulate(const lg_policy* p, const lg_dist* dist, int64_t trials,
                      uint64_t seed, int threads, int keep_trials,
                      lg_sim** out) {
  return Call([&] {
    NeedAll(p, dist, out);
    SimOptions opt;
    opt.threads = threads;
    opt.keep_trials = keep_trials != 0;
    *out = Make(lg_sim{SimulateJob(p->config, dist->dist, trials, seed, opt)});
  });
}

lg_status lg_sim_summary(const lg_sim* sim, lg_empirical* out) {
  return Call([&] {
    NeedAll(sim, out);
    *out = ToC(sim->metrics);
  });
}

lg_status lg_sim_json(const lg_sim* sim, char** out) {
  return Call([&] {
    NeedAll(sim, out);
    *out = Dup(ToJson(sim->metrics).dump(2));
  });
}

lg_status lg_sim_write_trials_csv(const lg_sim* sim, const char* path) {
  return Call([&] {
    NeedAll(sim, path);
    std::ostringstream os;
    WriteTrialsCsv(os, sim->metrics);
    WriteTextFile(path, os.str());
  });
}

lg_status lg_compare_json(const lg_metrics* analytic, const lg_sim* sim,
                          int* all_pass, char** out) {
  return Call([&] {
    NeedAll(analytic, sim, all_pass, out);
    CompareReport r = Compare(FromC(*analytic), sim->metrics);
    *all_pass = r.all_pass ? 1 : 0;
    *out = Dup(ToJson(r).dump(2));
  });
}

void lg_sim_free(lg_sim* sim) { delete sim; }

lg_status lg_sweep(const lg_policy* base, const lg_dist* dist,
                   const char* knob, const double* grid, size_t count,
                   lg_curve** out) {
  return Call([&] {
    NeedAll(base, dist, knob, out);
    Require(count > 0 && grid != nullptr, "sweep grid is empty");
    std::vector<double> g(grid, grid + count);
    *out = Make(lg_curve{Sweep(base->config, dist->dist, ParseKnob(knob), g)});
  });
}

lg_status lg_curve_size(const lg_curve* curve, size_t* out) {
  return Call([&] {
    NeedAll(curve, out);
    *out = curve->curve.points.size();
  });
}

lg_status lg_curve_point(const lg_curve* curve, size_t index, double* knob,
                         lg_metrics* metrics, int* ok) {
  return Call([&] {
    NeedAll(curve, knob, metrics, ok);
    Require(index < curve->curve.points.size(), "curve index out of range");
    const CurvePoint& p = curve->curve.points[index];
    *knob = p.knob;
    *metrics = ToC(p.metrics);
    *ok = p.error.empty() ? 1 : 0;
  });
}

lg_status lg_curve_write_csv(const lg_curve* curve, const char* path) {
  return Call([&] {
    NeedAll(curve, path);
    std::ostringstream os;
    WriteCurveCsv(os, curve->curve);
    WriteTextFile(path, os.str());
  });
}

lg_status lg_curve_write_json(const lg_curve* curve, const char* path) {
  return Call([&] {
    NeedAll(curve, path);
    WriteTextFile(path, ToJson(curve->curve).dump(2) + "\n");
  });
}

void lg_curve_free(lg_curve* curve) { delete curve; }

lg_status lg_cluster_config_default(lg_cluster_config** out) {
  return Call([&] {
    NeedAll(out);
    *out = Make(lg_cluster_config{});
  });
}

lg_status lg_cluster_config_parse(const char* json_text,
                                  lg_cluster_config** out) {
  return Call([&] {
    NeedAll(json_text, out);
    Json j;
    try {
      j = Json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorKind::kDomain,
           std::string("cluster config is not valid JSON: ") + e.what());
    }
    *out = Make(lg_cluster_config{ClusterConfigFromJson(j)});
  });
}

lg_status lg_cluster_config_load(const char* path, lg_cluster_config** out) {
  return Call([&] {
    NeedAll(path, out);
    *out = Make(lg_cluster_config{LoadClusterConfig(path)});
  });
}

lg_status lg_cluster_config_set_expansion(lg_cluster_config* c, double r) {
  return Call([&] {
    NeedAll(c);
    Require(r >= 1.0, "expansion rate r must be >= 1");
    c->config.expansion_rate = r;
  });
}

lg_status lg_cluster_config_set_horizon(lg_cluster_config* c, int64_t jobs) {
  return Call([&] {
    NeedAll(c);
    Require(jobs >= 1, "horizon_jobs must be >= 1");
    c->config.horizon_jobs = jobs;
  });
}

lg_status lg_cluster_config_json(const lg_cluster_config* c, char** out) {
  return Call([&] {
    NeedAll(c, out);
    *out = Dup(ToJson(c->config).dump(2));
  });
}

void lg_cluster_config_free(lg_cluster_config* c) { delete c; }

lg_status lg_cluster_run(const lg_cluster_config* c, uint64_t seed,
                         lg_cluster_result** out) {
  return Call([&] {
    NeedAll(c, out);
    *out = Make(lg_cluster_result{RunCluster(c->config, seed)});
  });
}

lg_status lg_cluster_result_json(const lg_cluster_result* r, char** out) {
  return Call([&] {
    NeedAll(r, out);
    *out = Dup(ToJson(r->result).dump(2));
  });
}

lg_status lg_cluster_result_probe(const lg_cluster_result* r,
                                  lg_empirical* out) {
  return Call([&] {
    NeedAll(r, out);
    *out = ToC(r->result.probe_metrics);
  });
}

lg_status lg_cluster_result_samples(const lg_cluster_result* r,
                                    lg_samples** out) {
  return Call([&] {
    NeedAll(r, out);
    *out = Make(lg_samples{r->result.task_exec_samples});
  });
}

lg_status lg_cluster_export_samples(const lg_cluster_result* r,
                                    const char* path) {
  return Call([&] {
    NeedAll(r, path);
    ExportExecSamples(r->result, path);
  });
}

void lg_cluster_result_free(lg_cluster_result* r) { delete r; }

lg_status lg_samples_read(const char* path, lg_samples** out) {
  return Call([&] {
    NeedAll(path, out);
    *out = Make(lg_samples{ReadSampleFile(path)});
  });
}

lg_status lg_samples_from_array(const double* values, size_t count,
                                lg_samples** out) {
  return Call([&] {
    NeedAll(out);
    Require(count == 0 || values != nullptr, "values is NULL");
    *out = Make(lg_samples{std::vector<double>(values, values + count)});
  });
}

lg_status lg_samples_data(const lg_samples* s, const double** values,
                          size_t* count) {
  return Call([&] {
    NeedAll(s, values, count);
    *values = s->values.data();
    *count = s->values.size();
  });
}

lg_status lg_samples_write(const lg_samples* s, const char* path) {
  return Call([&] {
    NeedAll(s, path);
    WriteSampleFile(path, s->values);
  });
}

void lg_samples_free(lg_samples* s) { delete s; }

lg_status lg_fit_samples(const lg_samples* s, lg_fit_family family,
                         lg_fit** out) {
  return Call([&] {
    NeedAll(s, out);
    FitResult f = family == LG_FIT_TRUNCATED_PARETO
                      ? FitTruncatedPareto(s->values)
                      : FitPareto(s->values);
    *out = Make(lg_fit{f});
  });
}

lg_status lg_fit_params(const lg_fit* f, double* s, double* u, double* alpha,
                        double* log_likelihood) {
  return Call([&] {
    NeedAll(f, s, u, alpha, log_likelihood);
    if (const auto* p = std::get_if<ParetoDist>(&f->fit.dist)) {
      *s = p->s;
      *u = std::numeric_limits<double>::infinity();
      *alpha = p->alpha;
    } else {
      const auto& t = std::get<TruncParetoDist>(f->fit.dist);
      *s = t.s;
      *u = t.u;
      *alpha = t.alpha;
    }
    *log_likelihood = f->fit.log_likelihood;
  });
}

lg_status lg_fit_json(const lg_fit* f, const lg_samples* s, char** out) {
  return Call([&] {
    NeedAll(f, s, out);
    Json j = ToJson(f->fit);
    j["goodness"] = ToJson(Goodness(f->fit, s->values));
    *out = Dup(j.dump(2));
  });
}

void lg_fit_free(lg_fit* f) { delete f; }

lg_status lg_trace_exec_times(const char* events_path, int64_t filter_k,
                              lg_samples** out, char** report_json) {
  return Call([&] {
    NeedAll(events_path, out, report_json);
    ParseReport parse;
    auto events = ParseEventsFile(events_path, &parse);
    std::optional<int64_t> filter;
    if (filter_k >= 0) filter = filter_k;
    ExecTimes times = ExtractExecTimes(events, filter);
    Json j;
    j["parse"] = ToJson(parse);
    j["exec_times"] = ToJson(times);
    *report_json = Dup(j.dump(2));
    *out = Make(lg_samples{std::move(times.times)});
  });
}

lg_status lg_trace_tail_csv(const lg_samples* s, const double* grid,
                            size_t count, const char* out_path) {
  return Call([&] {
    NeedAll(s, out_path);
    Require(count == 0 || grid != nullptr, "grid is NULL");
    auto curve = TailCurve(s->values, std::vector<double>(grid, grid + count));
    std::ostringstream os;
    os << "t,survival\n";
    char buf[64];
    for (const auto& [t, p] : curve) {
      os << std::string(buf, std::to_chars(buf, buf + sizeof(buf), t).ptr) << ','
         << std::string(buf, std::to_chars(buf, buf + sizeof(buf), p).ptr) << '\n';
    }
    WriteTextFile(out_path, os.str());
  });
}

lg_status lg_trace_synthetic(const char* dist, int64_t jobs,
                             int64_t tasks_per_job, uint64_t seed,
                             const char* out_path) {
  return Call([&] {
    NeedAll(dist, out_path);
    WriteEventsFile(out_path,
                    SyntheticTrace(ParseDist(dist), jobs, tasks_per_job, seed));
  });
}

lg_status lg_trace_convert_google(const char* in_path, const char* out_path,
                                  char** report_json) {
  return Call([&] {
    NeedAll(in_path, out_path, report_json);
    std::ifstream in(in_path);
    if (!in) Fail(ErrorKind::kIO, std::string("cannot read '") + in_path + "'");
    std::ostringstream os;
    ConvertReport rep = ConvertGoogleTaskEvents(in, os);
    WriteTextFile(out_path, os.str());
    Json errs = Json::array();
    for (const auto& e : rep.errors) {
      errs.push_back({{"line", e.line}, {"message", e.message}});
    }
    Json j;
    j["rows"] = rep.rows;
    j["written"] = rep.written;
    j["errors"] = errs;
    *report_json = Dup(j.dump(2));
  });
}

}  // extern "C"
