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

#include "laggard/distributions.h"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "laggard/errors.h"
#include "laggard/special_functions.h"

namespace laggard {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool ParseDouble(const std::string& text, double* out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  if (errno != 0 || end == begin) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  if (*end != '\0') return false;
  *out = v;
  return true;
}

std::vector<double> SplitNumbers(const std::string& text,
                                 const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!ParseDouble(item, &v)) {
      Fail(ErrorKind::kDomain, "bad number '" + item + "' in '" + spec + "'");
    }
    out.push_back(v);
  }
  return out;
}

void CheckPositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    Fail(ErrorKind::kDomain, std::string(what) + " must be positive");
  }
}

}  // namespace

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TaskDist MakeExp(double mu) {
  TaskDist d = ExpDist{mu};
  ValidateDist(d);
  return d;
}

TaskDist MakeSExp(double s, double mu) {
  TaskDist d = SExpDist{s, mu};
  ValidateDist(d);
  return d;
}

TaskDist MakePareto(double s, double alpha) {
  TaskDist d = ParetoDist{s, alpha};
  ValidateDist(d);
  return d;
}

TaskDist MakeTruncatedPareto(double s, double u, double alpha) {
  TaskDist d = TruncParetoDist{s, u, alpha};
  ValidateDist(d);
  return d;
}

TaskDist EmpiricalFromSamples(std::vector<double> samples) {
  Require(!samples.empty(), "empirical distribution needs samples");
  for (double v : samples) CheckPositive(v, "empirical sample");
  std::sort(samples.begin(), samples.end());
  return EmpiricalDist{
      std::make_shared<const std::vector<double>>(std::move(samples))};
}

void ValidateDist(const TaskDist& dist) {
  std::visit(Overloaded{
                 [](const ExpDist& d) { CheckPositive(d.mu, "rate mu"); },
                 [](const SExpDist& d) {
                   CheckPositive(d.s, "minimum s");
                   CheckPositive(d.mu, "rate mu");
                 },
                 [](const ParetoDist& d) {
                   CheckPositive(d.s, "minimum s");
                   CheckPositive(d.alpha, "tail index alpha");
                 },
                 [](const TruncParetoDist& d) {
                   CheckPositive(d.s, "minimum s");
                   CheckPositive(d.alpha, "tail index alpha");
                   Require(d.u > d.s, "truncation u must exceed s");
                 },
                 [](const EmpiricalDist& d) {
                   Require(d.samples && !d.samples->empty(),
                           "empirical distribution needs samples");
                   Require(std::is_sorted(d.samples->begin(),
                                          d.samples->end()),
                           "empirical samples must be sorted");
                   Require(d.samples->front() > 0.0,
                           "empirical samples must be positive");
                 },
             },
             dist);
}

std::string DescribeDist(const TaskDist& dist) {
  auto num = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  return std::visit(
      Overloaded{
          [&](const ExpDist& d) { return "exp:" + num(d.mu); },
          [&](const SExpDist& d) {
            return "sexp:" + num(d.s) + "," + num(d.mu);
          },
          [&](const ParetoDist& d) {
            return "pareto:" + num(d.s) + "," + num(d.alpha);
          },
          [&](const TruncParetoDist& d) {
            return "tpareto:" + num(d.s) + "," + num(d.u) + "," +
                   num(d.alpha);
          },
          [&](const EmpiricalDist& d) {
            return "empirical[" + std::to_string(d.samples->size()) + "]";
          },
      },
      dist);
}

TaskDist ParseDist(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    Fail(ErrorKind::kDomain,
         "distribution must look like name:params, got '" + text + "'");
  }
  std::string name = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (name == "empirical") return EmpiricalFromSamples(ReadSampleFile(rest));
  std::vector<double> p = SplitNumbers(rest, text);
  auto want = [&](size_t count) {
    if (p.size() != count) {
      std::ostringstream os;
      os << "'" << name << "' takes " << count << " parameter(s)";
      Fail(ErrorKind::kDomain, os.str());
    }
  };
  if (name == "exp") {
    want(1);
    return MakeExp(p[0]);
  }
  if (name == "sexp") {
    want(2);
    return MakeSExp(p[0], p[1]);
  }
  if (name == "pareto") {
    want(2);
    return MakePareto(p[0], p[1]);
  }
  if (name == "tpareto") {
    want(3);
    return MakeTruncatedPareto(p[0], p[1], p[2]);
  }
  if (name == "point") {
    want(1);
    return EmpiricalFromSamples({p[0]});
  }
  Fail(ErrorKind::kDomain, "unknown distribution '" + name + "'");
}

double Sample(const TaskDist& dist, Rng& rng) { return Sampler(dist)(rng); }

Sampler::Sampler(const TaskDist& dist) {
  ValidateDist(dist);
  std::visit(Overloaded{
                 [&](const ExpDist& d) {
                   kind_ = Kind::kExp;
                   scale_ = 1.0 / d.mu;
                 },
                 [&](const SExpDist& d) {
                   kind_ = Kind::kExp;
                   shift_ = d.s;
                   scale_ = 1.0 / d.mu;
                 },
                 [&](const ParetoDist& d) {
                   kind_ = Kind::kPareto;
                   scale_ = d.s;
                   inv_alpha_ = 1.0 / d.alpha;
                 },
                 [&](const TruncParetoDist& d) {
                   kind_ = Kind::kTruncPareto;
                   scale_ = d.s;
                   inv_alpha_ = 1.0 / d.alpha;
                   mass_ = -std::expm1(d.alpha * std::log(d.s / d.u));
                 },
                 [&](const EmpiricalDist& d) {
                   kind_ = Kind::kEmpirical;
                   values_ = d.samples;
                 },
             },
             dist);
}

double Tail(const TaskDist& dist, double t) {
  Require(t >= 0.0, "tail time must be non-negative");
  return std::visit(
      Overloaded{
          [t](const ExpDist& d) { return std::exp(-d.mu * t); },
          [t](const SExpDist& d) {
            return t <= d.s ? 1.0 : std::exp(-d.mu * (t - d.s));
          },
          [t](const ParetoDist& d) {
            return t <= d.s ? 1.0 : std::pow(d.s / t, d.alpha);
          },
          [t](const TruncParetoDist& d) {
            if (t <= d.s) return 1.0;
            if (t >= d.u) return 0.0;
            double lo = std::pow(d.s / d.u, d.alpha);
            return (std::pow(d.s / t, d.alpha) - lo) / (1.0 - lo);
          },
          [t](const EmpiricalDist& d) {
            const auto& v = *d.samples;
            auto it = std::upper_bound(v.begin(), v.end(), t);
            return static_cast<double>(v.end() - it) /
                   static_cast<double>(v.size());
          },
      },
      dist);
}

double Cdf(const TaskDist& dist, double t) {
  if (t < 0.0) return 0.0;
  return 1.0 - Tail(dist, t);
}

double DistMean(const TaskDist& dist) {
  return std::visit(
      Overloaded{
          [](const ExpDist& d) { return 1.0 / d.mu; },
          [](const SExpDist& d) { return d.s + 1.0 / d.mu; },
          [](const ParetoDist& d) {
            if (d.alpha <= 1.0) {
              Fail(ErrorKind::kInfiniteMoment,
                   "Pareto mean is infinite for alpha <= 1");
            }
            return d.s * d.alpha / (d.alpha - 1.0);
          },
          [](const TruncParetoDist& d) {
            double rho = d.s / d.u;
            double denom = -std::expm1(d.alpha * std::log(rho));
            if (std::fabs(d.alpha - 1.0) < 1e-12) {
              return d.s * std::log(d.u / d.s) / denom;
            }
            double num = -std::expm1((d.alpha - 1.0) * std::log(rho));
            return d.s * d.alpha / (d.alpha - 1.0) * num / denom;
          },
          [](const EmpiricalDist& d) {
            const auto& v = *d.samples;
            return std::accumulate(v.begin(), v.end(), 0.0) /
                   static_cast<double>(v.size());
          },
      },
      dist);
}

double OrderStatMean(const TaskDist& dist, int64_t n, int64_t i) {
  Require(n >= 1 && i >= 1 && i <= n, "order statistic needs 1 <= i <= n");
  if (const auto* e = std::get_if<ExpDist>(&dist)) {
    return (Harmonic(static_cast<double>(n)) -
            Harmonic(static_cast<double>(n - i))) /
           e->mu;
  }
  if (const auto* p = std::get_if<ParetoDist>(&dist)) {
    double a = p->alpha;
    double m = static_cast<double>(n - i + 1);
    if (!(a * m > 1.0)) {
      Fail(ErrorKind::kInfiniteMoment,
           "order statistic mean needs alpha > 1/(n-i+1)");
    }
    double nd = static_cast<double>(n);
    double lv = std::lgamma(nd + 1.0) - std::lgamma(m) +
                std::lgamma(m - 1.0 / a) - std::lgamma(nd + 1.0 - 1.0 / a);
    return p->s * std::exp(lv);
  }
  Fail(ErrorKind::kUnsupported,
       "order statistic means are available for exp and pareto only");
}

double ExpJointMoment(int64_t n, int64_t i, int64_t j, double mu) {
  Require(1 <= i && i <= j && j <= n, "joint moment needs 1 <= i <= j <= n");
  Require(mu > 0.0, "rate mu must be positive");
  double hn = Harmonic(static_cast<double>(n));
  double hni = Harmonic(static_cast<double>(n - i));
  double hnj = Harmonic(static_cast<double>(n - j));
  double h2n = GenHarmonic2(n);
  double h2ni = n - i >= 1 ? GenHarmonic2(n - i) : 0.0;
  return (h2n - h2ni + (hn - hni) * (hn - hnj)) / (mu * mu);
}

double ParetoJointMoment(int64_t n, int64_t i, int64_t j, double s,
                         double alpha) {
  Require(1 <= i && i <= j && j <= n, "joint moment needs 1 <= i <= j <= n");
  Require(s > 0.0 && alpha > 0.0, "Pareto parameters must be positive");
  double mi = static_cast<double>(n - i + 1);
  double mj = static_cast<double>(n - j + 1);
  if (!(alpha > 2.0 / mi) || !(alpha > 1.0 / mj)) {
    Fail(ErrorKind::kInfiniteMoment,
         "joint moment needs alpha > max(2/(n-i+1), 1/(n-j+1))");
  }
  double nd = static_cast<double>(n);
  double lv = std::lgamma(nd + 1.0) - std::lgamma(nd + 1.0 - 2.0 / alpha) +
              std::lgamma(mi - 2.0 / alpha) - std::lgamma(mi - 1.0 / alpha) +
              std::lgamma(mj - 1.0 / alpha) - std::lgamma(mj);
  return s * s * std::exp(lv);
}

std::vector<double> ReadSampleFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIO, "cannot open sample file '" + path + "'");
  std::vector<double> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    double v = 0.0;
    if (!ParseDouble(line.substr(first), &v) || !(v > 0.0) ||
        !std::isfinite(v)) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected a positive number";
      Fail(ErrorKind::kDomain, os.str());
    }
    out.push_back(v);
  }
  if (in.bad()) Fail(ErrorKind::kIO, "read error on '" + path + "'");
  return out;
}

void WriteSampleFile(const std::string& path,
                     const std::vector<double>& samples) {
  Require(!samples.empty(), "refusing to write an empty sample file");
  FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) Fail(ErrorKind::kIO, "cannot write '" + path + "'");
  for (double v : samples) std::fprintf(f, "%.17g\n", v);
  if (std::fclose(f) != 0) Fail(ErrorKind::kIO, "cannot close '" + path + "'");
}

}  // namespace laggard
