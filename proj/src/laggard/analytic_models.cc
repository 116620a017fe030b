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

#include "laggard/analytic_models.h"

#include <algorithm>
#include <sstream>

#include "laggard/errors.h"
#include "laggard/special_functions.h"

namespace laggard {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void CheckK(int64_t k) { Require(k >= 1, "task count k must be >= 1"); }

void CheckDelta(double delta) {
  Require(!std::isnan(delta) && delta >= 0.0, "delta must be >= 0");
}

void CheckRate(double mu) {
  Require(std::isfinite(mu) && mu > 0.0, "rate mu must be positive");
}

void CheckMin(double s) {
  Require(std::isfinite(s) && s > 0.0, "minimum s must be positive");
}

void CheckAlpha(double alpha) {
  Require(std::isfinite(alpha) && alpha > 1.0, "tail index must exceed 1");
}

double Kd(int64_t k) { return static_cast<double>(k); }

// 1 - e^{-mu x}, with x = inf mapping to 1.
double ExpCdf(double mu, double x) {
  if (std::isinf(x)) return 1.0;
  return -std::expm1(-mu * x);
}

// q^k for q in [0, 1].
double PowK(double q, int64_t k) {
  if (q <= 0.0) return 0.0;
  return std::exp(Kd(k) * std::log(q));
}

// s k! Gamma(1 - 1/a) / Gamma(k + 1 - 1/a)
double ParetoMaxMean(int64_t k, double s, double a) {
  if (!(a > 1.0)) {
    Fail(ErrorKind::kInfiniteMoment, "latency needs (effective) alpha > 1");
  }
  double kd = Kd(k);
  return s * std::exp(std::lgamma(kd + 1.0) + std::lgamma(1.0 - 1.0 / a) -
                      std::lgamma(kd + 1.0 - 1.0 / a));
}

// s n!/(n-k)! Gamma(n-k+1-1/a) / Gamma(n+1-1/a)
double ParetoCodedMean(int64_t k, int64_t n, double s, double a) {
  return OrderStatMean(ParetoDist{s, a}, n, k);
}

double ParetoMean(double s, double a) {
  if (!(a > 1.0)) {
    Fail(ErrorKind::kInfiniteMoment, "cost needs alpha > 1");
  }
  return s * a / (a - 1.0);
}

// Pareto survival beyond delta: (s/delta)^alpha, or 1 when delta <= s.
double ParetoSurvival(double s, double alpha, double delta) {
  if (std::isinf(delta)) return 0.0;
  if (delta <= s) return 1.0;
  return std::pow(s / delta, alpha);
}

double ParetoCdfAt(double s, double alpha, double x) {
  if (x <= s) return 0.0;
  return -std::expm1(alpha * std::log(s / x));
}

// Ratio Gamma(a)Gamma(b)/Gamma(a+b) over Gamma(c)Gamma(b)/Gamma(c+b).
double BetaRatio(double a, double c, double b) {
  int sa = 1, sc = 1;
  double la = LogAbsBeta(a, b, &sa);
  double lc = LogAbsBeta(c, b, &sc);
  return sa * sc * std::exp(la - lc);
}

// s Gamma(1-1/a)/Gamma(-1/a) B(x, -1/a)
double RelaunchF(double s, double a, double x) {
  int sb = 1;
  double lb = LogAbsBeta(x, -1.0 / a, &sb);
  return s * GammaFn(1.0 - 1.0 / a) / GammaFn(-1.0 / a) * sb * std::exp(lb);
}

struct ExpParams {
  double s;
  double mu;
};

bool AsExpFamily(const TaskDist& dist, ExpParams* out) {
  if (const auto* e = std::get_if<ExpDist>(&dist)) {
    *out = {0.0, e->mu};
    return true;
  }
  if (const auto* e = std::get_if<SExpDist>(&dist)) {
    *out = {e->s, e->mu};
    return true;
  }
  return false;
}

}  // namespace

void ValidatePolicy(const PolicyConfig& config) {
  CheckK(config.k);
  CheckDelta(config.delta);
  switch (config.redundancy.kind) {
    case RedKind::kNone:
      break;
    case RedKind::kReplication:
      Require(config.redundancy.c >= 1, "replication needs c >= 1");
      break;
    case RedKind::kCoding:
      Require(config.redundancy.n > config.k, "coding needs n > k");
      break;
  }
}

std::string DescribePolicy(const PolicyConfig& config) {
  std::ostringstream os;
  os << "k=" << config.k;
  switch (config.redundancy.kind) {
    case RedKind::kNone: os << " none"; break;
    case RedKind::kReplication: os << " rep:" << config.redundancy.c; break;
    case RedKind::kCoding: os << " coding:" << config.redundancy.n; break;
  }
  os << " delta=" << config.delta << " launch="
     << (config.red_launch == RedLaunch::kAtZero ? "zero" : "delta")
     << " relaunch=" << (config.relaunch_at_delta ? "yes" : "no");
  return os.str();
}

std::string ApproxFlagsLabel(unsigned flags) {
  std::string out;
  auto add = [&out](const char* name) {
    if (!out.empty()) out += "|";
    out += name;
  };
  if (flags & kApproxLatency) add("latency");
  if (flags & kApproxCostCancel) add("cost_cancel");
  if (flags & kApproxCostNoCancel) add("cost_nocancel");
  return out;
}

Metrics RepDelayedExp(int64_t k, int64_t c, double delta, double mu) {
  CheckK(k);
  Require(c >= 1, "replication needs c >= 1");
  CheckDelta(delta);
  CheckRate(mu);
  double q = ExpCdf(mu, delta);
  double cd = static_cast<double>(c);
  Metrics m;
  m.latency_mean = (Harmonic(Kd(k)) -
                    cd / (cd + 1.0) * Harmonic(Kd(k) - Kd(k) * q)) /
                   mu;
  m.cost_cancel_mean = Kd(k) / mu;
  m.cost_nocancel_mean = (cd * (1.0 - q) + 1.0) * Kd(k) / mu;
  if (q > 0.0 && q < 1.0) m.approx_flags |= kApproxLatency;
  return m;
}

double RepDelayedExpTail(int64_t k, int64_t c, double delta, double mu,
                         double t) {
  CheckK(k);
  Require(c >= 1, "replication needs c >= 1");
  CheckDelta(delta);
  CheckRate(mu);
  Require(t >= 0.0, "time must be non-negative");
  double log_surv;
  if (t <= delta) {
    log_surv = -mu * t;
  } else {
    log_surv = -mu * delta - (static_cast<double>(c) + 1.0) * mu * (t - delta);
  }
  // 1 - (1 - S)^k
  return -std::expm1(Kd(k) * std::log1p(-std::exp(log_surv)));
}

Metrics RepDelayedSExp(int64_t k, int64_t c, double delta, double s,
                       double mu) {
  CheckMin(s);
  Metrics base = RepDelayedExp(k, c, delta, mu);
  double cd = static_cast<double>(c);
  double kd = Kd(k);
  double q = delta > s ? ExpCdf(mu, delta - s) : 0.0;
  Metrics m;
  m.latency_mean = s + base.latency_mean;
  m.approx_flags = base.approx_flags;
  if (delta <= s) {
    double e = std::exp(-mu * delta) + mu * delta;
    m.cost_cancel_mean =
        kd * (cd + 1.0) * (s + (1.0 - cd / (cd + 1.0) * e) / mu);
  } else {
    double tail = std::isinf(delta) ? 0.0 : std::exp(-mu * delta);
    m.cost_cancel_mean = kd * (s + (1.0 + cd * (1.0 - q - tail)) / mu);
  }
  m.cost_nocancel_mean = kd * (cd * (1.0 - q) + 1.0) * (s + 1.0 / mu);
  return m;
}

Metrics CodeDelayedExp(int64_t k, int64_t n, double delta, double mu) {
  CheckK(k);
  Require(n > k, "coding needs n > k");
  CheckDelta(delta);
  CheckRate(mu);
  double q = ExpCdf(mu, delta);
  double kd = Kd(k), nd = Kd(n);
  // Delta - B(q; k+1, 0)/mu = (1/mu) sum_{j<=k} q^j / j
  double series = 0.0;
  double qj = 1.0;
  for (int64_t j = 1; j <= k; ++j) {
    qj *= q;
    series += qj / static_cast<double>(j);
  }
  Metrics m;
  m.latency_mean =
      (series + Harmonic(nd - kd * q) - Harmonic(nd - kd)) / mu;
  m.cost_cancel_mean = kd / mu;
  double qk = PowK(q, k);
  m.cost_nocancel_mean = kd / mu * qk + nd / mu * (1.0 - qk);
  if (q > 0.0 && q < 1.0) m.approx_flags |= kApproxLatency;
  return m;
}

double CodeDelayedExpTail(int64_t k, int64_t n, double delta, double mu,
                          double t) {
  CheckK(k);
  Require(n > k, "coding needs n > k");
  CheckDelta(delta);
  CheckRate(mu);
  Require(t >= 0.0, "time must be non-negative");
  if (t <= delta) {
    return -std::expm1(Kd(k) * std::log1p(-std::exp(-mu * t)));
  }
  double q = ExpCdf(mu, delta);
  double b = Kd(k) * (1.0 - q);
  if (!(b > 0.0)) return 0.0;
  return RegIncBeta(std::exp(-mu * (t - delta)), Kd(n - k + 1), b);
}

Metrics CodeDelayedSExp(int64_t k, int64_t n, double delta, double s,
                        double mu) {
  CheckMin(s);
  Metrics base = CodeDelayedExp(k, n, delta, mu);
  double kd = Kd(k), nd = Kd(n);
  double q = delta > s ? ExpCdf(mu, delta - s) : 0.0;
  double qt = ExpCdf(mu, delta);
  double zeta = ExpCdf(mu, s);
  double qk = PowK(q, k);
  Metrics m;
  m.latency_mean = s + base.latency_mean;
  m.approx_flags = base.approx_flags & kApproxLatency;
  if (delta <= s) {
    m.cost_nocancel_mean = nd * (s + 1.0 / mu);
    m.cost_cancel_mean =
        kd / mu + nd * s - (nd - kd) * IncBeta(qt, kd + 1.0, 0.0) / mu;
  } else {
    m.cost_nocancel_mean = (kd + (1.0 - qk) * (nd - kd)) * (s + 1.0 / mu);
    double corr = 0.0;
    double qtk = PowK(qt, k);
    if (qtk - qk != 0.0) {
      double x = kd - kd * q + 1.0;
      corr = std::exp(-kd * (1.0 - q) * std::log(zeta)) *
             IncBeta(zeta, x, 0.0) * (qtk - qk);
    }
    m.cost_cancel_mean =
        m.cost_nocancel_mean - (nd - kd) / mu * (1.0 - qk + corr);
    m.approx_flags |= kApproxCostCancel;
  }
  return m;
}

Metrics ZeroDelay(int64_t k, const Redundancy& red, const TaskDist& dist) {
  CheckK(k);
  double kd = Kd(k);
  Metrics m;
  ExpParams e{};
  if (AsExpFamily(dist, &e)) {
    double s = e.s, mu = e.mu;
    if (red.kind == RedKind::kCoding) {
      Require(red.n > k, "coding needs n > k");
      double nd = Kd(red.n);
      m.latency_mean = s + (Harmonic(nd) - Harmonic(nd - kd)) / mu;
      m.cost_cancel_mean = nd * s + kd / mu;
      m.cost_nocancel_mean = nd * (s + 1.0 / mu);
    } else {
      int64_t c = red.kind == RedKind::kReplication ? red.c : 0;
      Require(c >= 0, "replica count must be non-negative");
      double cd = static_cast<double>(c);
      m.latency_mean = s + Harmonic(kd) / ((cd + 1.0) * mu);
      m.cost_cancel_mean = kd * ((cd + 1.0) * s + 1.0 / mu);
      m.cost_nocancel_mean = (cd + 1.0) * kd * (s + 1.0 / mu);
    }
    return m;
  }
  const auto* p = std::get_if<ParetoDist>(&dist);
  if (p == nullptr) {
    Fail(ErrorKind::kUnsupported,
         "zero-delay closed forms need exp, sexp or pareto task times");
  }
  double s = p->s, a = p->alpha;
  if (red.kind == RedKind::kCoding) {
    Require(red.n > k, "coding needs n > k");
    int64_t n = red.n;
    double nd = Kd(n);
    if (!(a * Kd(n - k + 1) > 1.0)) {
      Fail(ErrorKind::kInfiniteMoment, "coding needs alpha > 1/(n-k+1)");
    }
    m.latency_mean = ParetoCodedMean(k, n, s, a);
    if (std::fabs(a - 1.0) > 1e-9) {
      double g = std::exp(std::lgamma(nd) - std::lgamma(nd - kd) +
                          std::lgamma(nd - kd + 1.0 - 1.0 / a) -
                          std::lgamma(nd + 1.0 - 1.0 / a));
      m.cost_cancel_mean = s * nd / (a - 1.0) * (a - g);
    } else {
      double sum = (nd - kd) * m.latency_mean;
      for (int64_t i = 1; i <= k; ++i) sum += OrderStatMean(dist, n, i);
      m.cost_cancel_mean = sum;
    }
    if (a > 1.0) m.cost_nocancel_mean = nd * ParetoMean(s, a);
  } else {
    int64_t c = red.kind == RedKind::kReplication ? red.c : 0;
    Require(c >= 0, "replica count must be non-negative");
    double cd = static_cast<double>(c);
    double at = (cd + 1.0) * a;
    m.latency_mean = ParetoMaxMean(k, s, at);
    m.cost_cancel_mean = s * kd * (cd + 1.0) * at / (at - 1.0);
    if (a > 1.0) m.cost_nocancel_mean = (cd + 1.0) * kd * ParetoMean(s, a);
  }
  return m;
}

namespace {

// Sum over i, j in [1, k] of E[X_{n:i} X_{n:j}] given an ordered-pair
// moment function joint(i, j) for i <= j.
template <class F>
double SumJointSquare(int64_t k, F joint) {
  double diag = 0.0, off = 0.0;
  for (int64_t i = 1; i <= k; ++i) {
    diag += joint(i, i);
    for (int64_t j = i + 1; j <= k; ++j) off += joint(i, j);
  }
  return diag + 2.0 * off;
}

struct ExpJointTable {
  ExpJointTable(int64_t n, double rate) : n(n), rate(rate) {
    h.assign(n + 1, 0.0);
    h2.assign(n + 1, 0.0);
    for (int64_t m = 1; m <= n; ++m) {
      double md = static_cast<double>(m);
      h[m] = h[m - 1] + 1.0 / md;
      h2[m] = h2[m - 1] + 1.0 / (md * md);
    }
  }
  double operator()(int64_t i, int64_t j) const {
    return (h2[n] - h2[n - i] + (h[n] - h[n - i]) * (h[n] - h[n - j])) /
           (rate * rate);
  }
  int64_t n;
  double rate;
  std::vector<double> h, h2;
};

struct ParetoJointTable {
  ParetoJointTable(int64_t n, double s, double a) : s2(s * s) {
    double nd = static_cast<double>(n);
    head = std::lgamma(nd + 1.0) - std::lgamma(nd + 1.0 - 2.0 / a);
    bi.assign(n + 1, 0.0);
    cj.assign(n + 1, 0.0);
    for (int64_t i = 1; i <= n; ++i) {
      double m = static_cast<double>(n - i + 1);
      bi[i] = m * a > 2.0
                  ? std::lgamma(m - 2.0 / a) - std::lgamma(m - 1.0 / a)
                  : kNaN;
      cj[i] = m * a > 1.0 ? std::lgamma(m - 1.0 / a) - std::lgamma(m) : kNaN;
    }
  }
  double operator()(int64_t i, int64_t j) const {
    double v = s2 * std::exp(head + bi[i] + cj[j]);
    if (std::isnan(v)) {
      Fail(ErrorKind::kInfiniteMoment,
           "second moment needs alpha > max(2/(n-i+1), 1/(n-j+1))");
    }
    return v;
  }
  double s2;
  double head;
  std::vector<double> bi, cj;
};

}  // namespace

Metrics ZeroDelaySecondMoments(int64_t k, const Redundancy& red,
                               const TaskDist& dist) {
  Metrics m = ZeroDelay(k, red, dist);
  double kd = Kd(k);
  double et2 = 0.0, ec2 = 0.0;
  ExpParams e{};
  if (AsExpFamily(dist, &e)) {
    double s = e.s, mu = e.mu;
    if (red.kind == RedKind::kCoding) {
      int64_t n = red.n;
      double nd = Kd(n);
      ExpJointTable x(n, mu);
      double mean_t = s + (x.h[n] - x.h[n - k]) / mu;
      et2 = (x.h2[n] - x.h2[n - k]) / (mu * mu) + mean_t * mean_t;
      double cross = 0.0;
      for (int64_t i = 1; i <= k; ++i) cross += x(i, k);
      ec2 = (nd * s) * (nd * s) + 2.0 * nd * s * kd / mu +
            (nd - kd) * (nd - kd) * x(k, k) + 2.0 * (nd - kd) * cross +
            SumJointSquare(k, x);
    } else {
      double cd = red.kind == RedKind::kReplication ? Kd(red.c) : 0.0;
      double lam = (cd + 1.0) * mu;
      ExpJointTable y(k, lam);
      double mean_t = s + y.h[k] / lam;
      et2 = mean_t * mean_t + y.h2[k] / (lam * lam);
      double base = kd * (cd + 1.0) * s;
      ec2 = base * base + 2.0 * base * kd / mu +
            (cd + 1.0) * (cd + 1.0) * SumJointSquare(k, y);
    }
  } else {
    const auto& p = std::get<ParetoDist>(dist);
    if (red.kind == RedKind::kCoding) {
      int64_t n = red.n;
      double nd = Kd(n);
      ParetoJointTable x(n, p.s, p.alpha);
      et2 = x(k, k);
      double cross = 0.0;
      for (int64_t i = 1; i <= k; ++i) cross += x(i, k);
      ec2 = (nd - kd) * (nd - kd) * x(k, k) + 2.0 * (nd - kd) * cross +
            SumJointSquare(k, x);
    } else {
      double cd = red.kind == RedKind::kReplication ? Kd(red.c) : 0.0;
      ParetoJointTable y(k, p.s, (cd + 1.0) * p.alpha);
      et2 = y(k, k);
      ec2 = (cd + 1.0) * (cd + 1.0) * SumJointSquare(k, y);
    }
  }
  m.latency_sd =
      std::sqrt(std::max(0.0, et2 - m.latency_mean * m.latency_mean));
  m.cost_sd =
      std::sqrt(std::max(0.0, ec2 - m.cost_cancel_mean * m.cost_cancel_mean));
  return m;
}

NoCostReplication LatencyNoCostReplication(int64_t k, double s,
                                           double alpha) {
  CheckK(k);
  CheckMin(s);
  CheckAlpha(alpha);
  NoCostReplication out;
  out.feasible = alpha < 1.5;
  if (out.feasible) {
    double x = 1.0 / (alpha - 1.0);
    double xr = std::round(x);
    if (std::fabs(x - xr) <= 1e-9 * std::max(1.0, x)) x = xr;
    out.c_max = std::max<int64_t>(static_cast<int64_t>(std::floor(x)) - 1, 0);
  }
  out.t_min = ParetoMaxMean(k, s, (Kd(out.c_max) + 1.0) * alpha);
  return out;
}

NoCostCoding LatencyNoCostCoding(int64_t k, double s, double alpha) {
  CheckK(k);
  CheckMin(s);
  CheckAlpha(alpha);
  auto f = [&](int64_t n) { return ParetoCodedMean(k, n, s, alpha); };
  double target = s * alpha;
  NoCostCoding out;
  out.n_max = k;
  if (f(k + 1) >= target) {
    int64_t lo = k + 1, step = 1, hi = lo + 1;
    while (f(hi) >= target) {
      lo = hi;
      step *= 2;
      hi = lo + step;
      if (step > (int64_t{1} << 40)) {
        Fail(ErrorKind::kConvergence, "n_max search did not terminate");
      }
    }
    while (hi - lo > 1) {
      int64_t mid = lo + (hi - lo) / 2;
      if (f(mid) >= target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.n_max = lo;
  }
  out.t_min = f(out.n_max);
  double aa = std::pow(alpha, alpha);
  out.sufficient_ok = aa <= (Kd(k) + 1.0) / 2.0;
  out.necessary_ok = aa <= Kd(k) + 2.0;
  out.t_min_bound = s * (alpha + ParetoMaxMean(k, 1.0, alpha));
  return out;
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kReduce: return "guaranteed_reduce";
    case Verdict::kIncrease: return "guaranteed_increase";
    case Verdict::kUnchanged: return "unchanged";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TailChange TailChangeVerdict(int64_t k, double r_i, double r_j,
                             double alpha_i, double alpha_j,
                             TailChangeKind kind) {
  CheckK(k);
  Require(r_i > 1.0 && r_j > r_i, "need r_j > r_i > 1");
  CheckAlpha(alpha_i);
  CheckAlpha(alpha_j);
  TailChange out;
  double ratio = alpha_i / alpha_j;
  auto close = [](double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
  };
  if (kind == TailChangeKind::kReplicated) {
    double bound = r_j / r_i;
    out.approx_threshold = r_i / r_j;
    if (close(ratio, bound)) {
      out.verdict = Verdict::kUnchanged;
    } else {
      out.verdict = ratio < bound ? Verdict::kReduce : Verdict::kIncrease;
    }
    return out;
  }
  int64_t n_i = static_cast<int64_t>(std::floor(Kd(k) * r_i + 1e-9));
  int64_t n_j = static_cast<int64_t>(std::floor(Kd(k) * r_j + 1e-9));
  double kd = Kd(k), ni = Kd(n_i), nj = Kd(n_j);
  out.approx_threshold =
      std::log1p(kd / (nj - kd + 1.0)) / std::log1p(kd / (ni - kd + 1.0));
  bool same_alpha = close(alpha_i, alpha_j);
  if (n_j == n_i && same_alpha) {
    out.verdict = Verdict::kUnchanged;
    return out;
  }
  if (alpha_j >= alpha_i || same_alpha) {
    out.verdict = Verdict::kReduce;
    return out;
  }
  if (n_j == n_i) {
    out.verdict = Verdict::kIncrease;
    return out;
  }
  double reduce_bound =
      std::log(ni / (ni - kd + 1.0)) / std::log((nj + 1.0) / (nj - kd));
  if (ratio <= reduce_bound) {
    out.verdict = Verdict::kReduce;
    return out;
  }
  if (n_i > k) {
    double inc_bound =
        std::log((ni + 1.0) / (ni - kd)) / std::log(nj / (nj - kd + 1.0));
    if (ratio >= inc_bound) {
      out.verdict = Verdict::kIncrease;
      return out;
    }
  }
  out.verdict = Verdict::kInconclusive;
  return out;
}

Metrics Relaunch(int64_t k, double delta, double s, double alpha) {
  CheckK(k);
  CheckDelta(delta);
  CheckMin(s);
  CheckAlpha(alpha);
  double kd = Kd(k);
  double L = ParetoMaxMean(k, s, alpha);
  double mean = ParetoMean(s, alpha);
  Metrics m;
  if (std::isinf(delta)) {
    m.latency_mean = L;
    m.cost_nocancel_mean = kd * mean;
  } else if (delta <= s) {
    m.latency_mean = delta + L;
    m.cost_nocancel_mean = kd * delta + kd * mean;
  } else {
    double p = ParetoSurvival(s, alpha, delta);
    double q = 1.0 - p;
    double qk = std::exp(kd * std::log1p(-p));
    m.latency_mean =
        delta * (1.0 - qk) +
        L * ((s / delta - 1.0) * RegIncBeta(p, 1.0 - 1.0 / alpha, kd) + 1.0);
    m.cost_nocancel_mean = alpha / (alpha - 1.0) * kd * s * (2.0 - q) -
                           kd * delta * p / (alpha - 1.0);
  }
  m.cost_cancel_mean = m.cost_nocancel_mean;
  return m;
}

double RelaunchTail(int64_t k, double delta, double s, double alpha,
                    double t) {
  CheckK(k);
  CheckDelta(delta);
  CheckMin(s);
  Require(alpha > 0.0, "tail index must be positive");
  Require(t >= 0.0, "time must be non-negative");
  double kd = Kd(k);
  double below;
  if (t <= delta) {
    below = ParetoCdfAt(s, alpha, t);
  } else {
    double q = ParetoCdfAt(s, alpha, delta);
    below = q + (1.0 - q) * ParetoCdfAt(s, alpha, t - delta);
  }
  if (below <= 0.0) return 1.0;
  return -std::expm1(kd * std::log(below));
}

double RelaunchAltCostCancel(int64_t k, double delta, double s,
                             double alpha) {
  CheckK(k);
  CheckDelta(delta);
  CheckMin(s);
  CheckAlpha(alpha);
  double kd = Kd(k);
  double L = ParetoMaxMean(k, s, alpha);
  double p = ParetoSurvival(s, alpha, delta);
  if (delta <= s) {
    return kd * delta + (kd * s * alpha - L) / (alpha - 1.0) + kd * p * delta;
  }
  return alpha / (alpha - 1.0) * (kd * p * (s - delta) + kd * s);
}

RelaunchOpt RelaunchOptimum(int64_t k, double s, double alpha) {
  CheckK(k);
  CheckMin(s);
  CheckAlpha(alpha);
  RelaunchOpt out;
  out.latency_norel = ParetoMaxMean(k, s, alpha);
  out.delta_star = std::sqrt(s * out.latency_norel);
  out.p_star = std::pow(GammaFn(1.0 - 1.0 / alpha), -alpha / 2.0) /
               std::sqrt(Kd(k) + 1.0);
  out.sufficient_T = out.latency_norel > 4.0 * s;
  out.sufficient_alpha = alpha < std::log(Kd(k)) / std::log(4.0);
  return out;
}

double ZeroDelayRedRelaunch(int64_t k, const Redundancy& red, double delta,
                            double s, double alpha) {
  CheckK(k);
  CheckDelta(delta);
  CheckMin(s);
  CheckAlpha(alpha);
  double kd = Kd(k);
  double norel = ZeroDelay(k, red, ParetoDist{s, alpha}).latency_mean;
  if (std::isinf(delta)) return norel;
  if (delta <= s) return delta + norel;
  if (red.kind == RedKind::kCoding) {
    double nd = Kd(red.n);
    double p = ParetoSurvival(s, alpha, delta);
    return delta * RegIncBeta(p, nd - kd + 1.0, kd) +
           norel * (1.0 + (s / delta - 1.0) *
                              RegIncBeta(p, nd - kd + 1.0 - 1.0 / alpha, kd));
  }
  double cd = red.kind == RedKind::kReplication ? Kd(red.c) : 0.0;
  double at = (cd + 1.0) * alpha;
  double p = ParetoSurvival(s, at, delta);
  double qk = std::exp(kd * std::log1p(-p));
  return delta * (1.0 - qk) +
         norel * (1.0 + (s / delta - 1.0) * RegIncBeta(p, 1.0 - 1.0 / at, kd));
}

RedRelaunchSuff RedRelaunchSufficiency(int64_t k, const Redundancy& red,
                                       double s, double alpha) {
  CheckK(k);
  CheckMin(s);
  CheckAlpha(alpha);
  double norel = ZeroDelay(k, red, ParetoDist{s, alpha}).latency_mean;
  RedRelaunchSuff out;
  out.sufficient_T = norel > 4.0 * s;
  double ln4 = std::log(4.0);
  if (red.kind == RedKind::kCoding) {
    double nd = Kd(red.n), kd = Kd(k);
    out.sufficient_alpha = alpha < std::log(nd / (nd - kd + 1.0)) / ln4;
  } else {
    double cd = red.kind == RedKind::kReplication ? Kd(red.c) : 0.0;
    out.sufficient_alpha = alpha < std::log(Kd(k)) / ((cd + 1.0) * ln4);
  }
  out.delta_star = std::sqrt(s * norel);
  return out;
}

Metrics DelayedRedRelaunch(int64_t k, const Redundancy& red, double delta,
                           double s, double alpha) {
  CheckK(k);
  CheckDelta(delta);
  CheckMin(s);
  CheckAlpha(alpha);
  if (red.kind == RedKind::kNone) return Relaunch(k, delta, s, alpha);
  if (std::isinf(delta)) {
    return ZeroDelay(k, Redundancy::None(), ParetoDist{s, alpha});
  }
  double kd = Kd(k);
  double a = alpha;
  double p = ParetoSurvival(s, a, delta);
  double q = 1.0 - p;
  double qk = delta > s ? std::exp(kd * std::log1p(-p)) : 0.0;
  Metrics m;
  if (red.kind == RedKind::kReplication) {
    Require(red.c >= 1, "replication needs c >= 1");
    double cd = Kd(red.c);
    double at = (cd + 1.0) * a;
    if (delta <= s) {
      m.latency_mean = delta + ParetoMaxMean(k, s, at);
      m.cost_cancel_mean = kd * delta + kd * s * (cd + 1.0) * at / (at - 1.0);
      m.cost_nocancel_mean = kd * delta + kd * s * (cd + 1.0) * a / (a - 1.0);
    } else {
      double nored = Relaunch(k, delta, s, a).latency_mean;
      double x = kd * p + 1.0;
      m.latency_mean = nored + RelaunchF(s, at, x) - RelaunchF(s, a, x);
      m.approx_flags |= kApproxLatency;
      double head = kd * a / (a - 1.0) * (s - delta * p) + kd * p * delta;
      m.cost_cancel_mean = head + kd * s * (cd + 1.0) * p * at / (at - 1.0);
      m.cost_nocancel_mean = head + kd * s * (cd + 1.0) * p * a / (a - 1.0);
    }
    return m;
  }
  Require(red.n > k, "coding needs n > k");
  int64_t n = red.n;
  double nd = Kd(n);
  if (delta <= s) {
    Metrics z = ZeroDelay(k, red, ParetoDist{s, a});
    m.latency_mean = delta + z.latency_mean;
    m.cost_cancel_mean = kd * delta + z.cost_cancel_mean;
    m.cost_nocancel_mean = kd * delta + nd * s / (1.0 - 1.0 / a);
    return m;
  }
  double ratio = BetaRatio(nd - kd * q + 1.0, nd - kd + 1.0, -1.0 / a);
  m.latency_mean = delta * (1.0 - qk) +
                   s * (ratio + kd * IncBeta(q, kd, 1.0 - 1.0 / a) - qk);
  m.cost_cancel_mean = a / (a - 1.0) * (kd * p * (s - delta) + nd * s) +
                       kd * p * delta - s * (nd - kd) * qk -
                       s / (a - 1.0) * (nd - kd) * ratio;
  m.cost_nocancel_mean =
      a / (a - 1.0) * (kd * s * (p + qk) + nd * s * (1.0 - qk)) -
      kd * delta * p / (a - 1.0);
  m.approx_flags |= kApproxLatency | kApproxCostCancel;
  return m;
}

Metrics Evaluate(const PolicyConfig& config, const TaskDist& dist) {
  ValidatePolicy(config);
  const int64_t k = config.k;
  const Redundancy& red = config.redundancy;
  const bool relaunch = config.relaunch_at_delta;
  const bool at_zero = config.red_launch == RedLaunch::kAtZero;
  const double delta = config.delta;

  if (const auto* p = std::get_if<ParetoDist>(&dist)) {
    if (relaunch) {
      if (red.kind == RedKind::kNone) {
        return Relaunch(k, delta, p->s, p->alpha);
      }
      if (at_zero) {
        Metrics m;
        m.latency_mean = ZeroDelayRedRelaunch(k, red, delta, p->s, p->alpha);
        return m;
      }
      return DelayedRedRelaunch(k, red, delta, p->s, p->alpha);
    }
    if (red.kind == RedKind::kNone || at_zero || delta == 0.0) {
      return ZeroDelay(k, red, dist);
    }
    if (std::isinf(delta)) return ZeroDelay(k, Redundancy::None(), dist);
    Fail(ErrorKind::kUnsupported,
         "no closed form for delayed redundancy with pareto task times "
         "without relaunch; use simulate");
  }

  ExpParams e{};
  if (!AsExpFamily(dist, &e)) {
    Fail(ErrorKind::kUnsupported,
         "closed forms need exp, sexp or pareto task times; use simulate");
  }
  if (relaunch) {
    Fail(ErrorKind::kUnsupported,
         "relaunch closed forms need pareto task times; use simulate");
  }
  if (red.kind == RedKind::kNone) return ZeroDelay(k, red, dist);
  double d = at_zero ? 0.0 : delta;
  bool shifted = std::holds_alternative<SExpDist>(dist);
  if (shifted && d == 0.0) return ZeroDelay(k, red, dist);
  if (red.kind == RedKind::kReplication) {
    return shifted ? RepDelayedSExp(k, red.c, d, e.s, e.mu)
                   : RepDelayedExp(k, red.c, d, e.mu);
  }
  return shifted ? CodeDelayedSExp(k, red.n, d, e.s, e.mu)
                 : CodeDelayedExp(k, red.n, d, e.mu);
}

double LatencyTail(const PolicyConfig& config, const TaskDist& dist,
                   double t) {
  ValidatePolicy(config);
  const Redundancy& red = config.redundancy;
  const bool at_zero = config.red_launch == RedLaunch::kAtZero;
  double d = at_zero ? 0.0 : config.delta;
  if (const auto* e = std::get_if<ExpDist>(&dist)) {
    if (!config.relaunch_at_delta) {
      if (red.kind == RedKind::kReplication) {
        return RepDelayedExpTail(config.k, red.c, d, e->mu, t);
      }
      if (red.kind == RedKind::kCoding) {
        return CodeDelayedExpTail(config.k, red.n, d, e->mu, t);
      }
    }
  }
  if (const auto* p = std::get_if<ParetoDist>(&dist)) {
    if (red.kind == RedKind::kNone) {
      double delta = config.relaunch_at_delta ? config.delta : kNever;
      return RelaunchTail(config.k, delta, p->s, p->alpha, t);
    }
  }
  Fail(ErrorKind::kUnsupported,
       "no closed-form latency tail for this policy and distribution");
}

const char* KnobName(Knob knob) {
  switch (knob) {
    case Knob::kDelta: return "delta";
    case Knob::kC: return "c";
    case Knob::kN: return "n";
    case Knob::kR: return "r";
  }
  return "delta";
}

Knob ParseKnob(const std::string& name) {
  if (name == "delta") return Knob::kDelta;
  if (name == "c") return Knob::kC;
  if (name == "n") return Knob::kN;
  if (name == "r") return Knob::kR;
  Fail(ErrorKind::kDomain, "unknown knob '" + name + "'");
}

PolicyConfig ApplyKnob(const PolicyConfig& base, Knob knob, double value) {
  PolicyConfig p = base;
  auto as_int = [value](const char* what) {
    double r = std::round(value);
    Require(std::fabs(r - value) < 1e-9,
            std::string(what) + " grid values must be integers");
    return static_cast<int64_t>(r);
  };
  switch (knob) {
    case Knob::kDelta:
      p.delta = value;
      break;
    case Knob::kC: {
      int64_t c = as_int("c");
      p.redundancy = c == 0 ? Redundancy::None() : Redundancy::Replication(c);
      break;
    }
    case Knob::kN: {
      int64_t n = as_int("n");
      p.redundancy = n == p.k ? Redundancy::None() : Redundancy::Coding(n);
      break;
    }
    case Knob::kR: {
      Require(value >= 1.0, "expansion rate r must be >= 1");
      if (base.redundancy.kind == RedKind::kReplication) {
        int64_t c = as_int("r") - 1;
        p.redundancy =
            c == 0 ? Redundancy::None() : Redundancy::Replication(c);
      } else {
        int64_t n =
            static_cast<int64_t>(std::floor(value * Kd(base.k) + 1e-9));
        p.redundancy = n == p.k ? Redundancy::None() : Redundancy::Coding(n);
      }
      break;
    }
  }
  return p;
}

TradeoffCurve Sweep(const PolicyConfig& base, const TaskDist& dist, Knob knob,
                    const std::vector<double>& grid) {
  Require(!grid.empty(), "sweep grid is empty");
  bool up = true, down = true;
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) up = false;
    if (!(grid[i] < grid[i - 1])) down = false;
  }
  Require(up || down, "sweep grid must be strictly monotone");
  TradeoffCurve curve;
  curve.knob_name = KnobName(knob);
  curve.points.reserve(grid.size());
  for (double v : grid) {
    CurvePoint pt;
    pt.knob = v;
    try {
      PolicyConfig p = ApplyKnob(base, knob, v);
      pt.metrics = Evaluate(p, dist);
      bool zero_delay = !p.relaunch_at_delta &&
                        (p.redundancy.kind == RedKind::kNone ||
                         p.red_launch == RedLaunch::kAtZero || p.delta == 0.0);
      if (zero_delay && !std::holds_alternative<ExpDist>(dist)) {
        try {
          Metrics sd = ZeroDelaySecondMoments(p.k, p.redundancy, dist);
          pt.metrics.latency_sd = sd.latency_sd;
          pt.metrics.cost_sd = sd.cost_sd;
        } catch (const Error&) {
          // Second moments do not exist; leave sd empty.
        }
      }
    } catch (const Error& err) {
      pt.metrics = Metrics{};
      pt.error = err.what();
    }
    curve.points.push_back(std::move(pt));
  }
  return curve;
}

}  // namespace laggard
