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

#include "laggard/special_functions.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "laggard/errors.h"

namespace laggard {

namespace {

const int64_t kDirectHarmonicMax = 256;

bool IsPole(double x) { return x <= 0.0 && x == std::floor(x); }

void CheckFinite(double x, const char* name) {
  if (!std::isfinite(x)) {
    std::ostringstream os;
    os << name << " must be finite";
    Fail(ErrorKind::kDomain, os.str());
  }
}

void CheckPole(double x, const char* where) {
  if (IsPole(x)) {
    std::ostringstream os;
    os << where << ": Gamma pole at " << x;
    Fail(ErrorKind::kPole, os.str());
  }
}

}  // namespace

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kPole: return "pole";
    case ErrorKind::kDivergence: return "divergence";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kInfiniteMoment: return "infinite_moment";
    case ErrorKind::kEvaluation: return "evaluation";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kInstability: return "instability";
    case ErrorKind::kIO: return "io";
  }
  return "unknown";
}

double Harmonic(double x) {
  CheckFinite(x, "harmonic argument");
  Require(x >= 0.0, "harmonic argument must be non-negative");
  if (x == std::floor(x) && x <= kDirectHarmonicMax) {
    double sum = 0.0;
    for (int64_t i = static_cast<int64_t>(x); i >= 1; --i) sum += 1.0 / i;
    return sum;
  }
  return boost::math::digamma(x + 1.0) +
         boost::math::constants::euler<double>();
}

double GenHarmonic2(int64_t n) {
  Require(n >= 1, "generalized harmonic index must be >= 1");
  if (n > 1000000) {
    return boost::math::constants::pi_sqr_div_six<double>() -
           boost::math::trigamma(static_cast<double>(n) + 1.0);
  }
  double sum = 0.0;
  for (int64_t i = n; i >= 1; --i) {
    double d = static_cast<double>(i);
    sum += 1.0 / (d * d);
  }
  return sum;
}

double GammaFn(double x) {
  CheckFinite(x, "gamma argument");
  CheckPole(x, "gamma");
  double g = std::tgamma(x);
  if (!std::isfinite(g)) {
    Fail(ErrorKind::kEvaluation, "gamma overflows at this argument");
  }
  return g;
}

double LogAbsGamma(double x, int* sign) {
  CheckFinite(x, "gamma argument");
  CheckPole(x, "log-gamma");
  int s = 1;
  double v = ::lgamma_r(x, &s);
  if (sign != nullptr) *sign = s;
  return v;
}

double LogAbsBeta(double m, double n, int* sign) {
  CheckFinite(m, "beta parameter");
  CheckFinite(n, "beta parameter");
  CheckPole(m, "beta");
  CheckPole(n, "beta");
  CheckPole(m + n, "beta");
  int sm = 1, sn = 1, smn = 1;
  double v = LogAbsGamma(m, &sm) + LogAbsGamma(n, &sn) -
             LogAbsGamma(m + n, &smn);
  if (sign != nullptr) *sign = sm * sn * smn;
  return v;
}

double Beta(double m, double n) {
  int sign = 1;
  double lv = LogAbsBeta(m, n, &sign);
  double v = std::exp(lv);
  if (!std::isfinite(v)) {
    Fail(ErrorKind::kEvaluation, "beta overflows at these parameters");
  }
  return sign * v;
}

double IncBeta(double q, double m, double n) {
  CheckFinite(q, "incomplete beta limit");
  CheckFinite(m, "incomplete beta parameter");
  CheckFinite(n, "incomplete beta parameter");
  Require(q >= 0.0 && q <= 1.0, "incomplete beta limit must lie in [0,1]");
  Require(m > 0.0, "incomplete beta requires m > 0");
  if (q == 0.0) return 0.0;
  if (n > 0.0) return boost::math::beta(m, n, q);
  if (q == 1.0) {
    Fail(ErrorKind::kDivergence,
         "incomplete beta diverges at q = 1 when n <= 0");
  }
  // u = 1 - e^{-w} turns (1-u)^{n-1} du into e^{-n w} dw.
  double upper = -std::log1p(-q);
  auto integrand = [m, n](double w) {
    double u = -std::expm1(-w);
    if (u <= 0.0) return m == 1.0 ? 1.0 : 0.0;
    return std::exp((m - 1.0) * std::log(u) - n * w);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  double v = integrator.integrate(integrand, 0.0, upper, 1e-14, &err);
  if (!std::isfinite(v)) {
    Fail(ErrorKind::kEvaluation, "incomplete beta quadrature failed");
  }
  return v;
}

double RegIncBeta(double q, double m, double n) {
  CheckFinite(q, "incomplete beta limit");
  Require(q >= 0.0 && q <= 1.0, "incomplete beta limit must lie in [0,1]");
  Require(m > 0.0, "regularized incomplete beta requires m > 0");
  CheckFinite(n, "incomplete beta parameter");
  if (n > 0.0) return boost::math::ibeta(m, n, q);
  double denom = Beta(m, n);
  if (denom == 0.0) {
    Fail(ErrorKind::kDegenerate, "complete beta is zero");
  }
  return IncBeta(q, m, n) / denom;
}

double GammaRatioSum(int64_t n, double beta_param) {
  Require(n >= 1, "gamma ratio sum requires n >= 1");
  Require(beta_param > 0.0 && beta_param < 1.0,
          "gamma ratio sum requires 0 < beta < 1");
  double nd = static_cast<double>(n);
  return std::exp(LogAbsGamma(nd + 1.0 - beta_param) - LogAbsGamma(nd)) /
         (1.0 - beta_param);
}

double BinomExpect(const std::function<double(int64_t)>& f, int64_t k,
                   double q) {
  Require(k >= 0, "binomial count must be non-negative");
  CheckFinite(q, "binomial probability");
  Require(q >= 0.0 && q <= 1.0, "binomial probability must lie in [0,1]");
  auto eval = [&f](int64_t r) {
    double v = f(r);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "binomial expectation: f(" << r << ") is not finite";
      Fail(ErrorKind::kEvaluation, os.str());
    }
    return v;
  };
  if (q == 0.0) return eval(0);
  if (q == 1.0) return eval(k);

  int64_t mode = static_cast<int64_t>(std::floor((k + 1) * q));
  if (mode > k) mode = k;
  double kd = static_cast<double>(k);
  double md = static_cast<double>(mode);
  double log_pm = std::lgamma(kd + 1.0) - std::lgamma(md + 1.0) -
                  std::lgamma(kd - md + 1.0) + md * std::log(q) +
                  (kd - md) * std::log1p(-q);
  double pm = std::exp(log_pm);
  double odds = q / (1.0 - q);

  double sum = pm * eval(mode);
  double p = pm;
  for (int64_t r = mode; r < k; ++r) {
    p *= static_cast<double>(k - r) / static_cast<double>(r + 1) * odds;
    sum += p * eval(r + 1);
  }
  p = pm;
  for (int64_t r = mode; r > 0; --r) {
    p *= static_cast<double>(r) / static_cast<double>(k - r + 1) / odds;
    sum += p * eval(r - 1);
  }
  return sum;
}

double ApproxBinomHarmonic(double n, int64_t k, double q) {
  Require(q >= 0.0 && q <= 1.0, "binomial probability must lie in [0,1]");
  double arg = n - static_cast<double>(k) * q;
  Require(arg >= 0.0, "approximate harmonic requires n - kq >= 0");
  return Harmonic(arg);
}

double ApproxBinomRegIncBeta(double z, double x, double y, int64_t k,
                             double q) {
  Require(q >= 0.0 && q <= 1.0, "binomial probability must lie in [0,1]");
  double arg = x - static_cast<double>(k) * q;
  Require(arg > 0.0, "approximate incomplete beta requires x - kq > 0");
  return RegIncBeta(z, arg, y);
}

}  // namespace laggard
