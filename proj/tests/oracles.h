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

// Reference computations used only by the tests. None of these share a code
// path with the library: quadrature is Gauss-Kronrod, sums run in long
// double, binomial weights come from log-Gamma rather than a recursion.

#ifndef LAGGARD_TESTS_ORACLES_H
#define LAGGARD_TESTS_ORACLES_H

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

inline double Integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, unsigned depth = 12) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, depth, tol, &err);
}

inline double HarmonicSum(int64_t n) {
  long double s = 0.0L;
  for (int64_t i = n; i >= 1; --i) s += 1.0L / static_cast<long double>(i);
  return static_cast<double>(s);
}

inline double BinomWeight(int64_t k, int64_t r, double q) {
  if (q == 0.0) return r == 0 ? 1.0 : 0.0;
  if (q == 1.0) return r == k ? 1.0 : 0.0;
  long double lw = std::lgamma(static_cast<long double>(k) + 1) -
                   std::lgamma(static_cast<long double>(r) + 1) -
                   std::lgamma(static_cast<long double>(k - r) + 1) +
                   r * std::log(static_cast<long double>(q)) +
                   (k - r) * std::log1p(-static_cast<long double>(q));
  return static_cast<double>(std::exp(lw));
}

inline double BinomSum(const std::function<double(int64_t)>& f, int64_t k,
                       double q) {
  long double s = 0.0L;
  for (int64_t r = 0; r <= k; ++r) {
    double w = BinomWeight(k, r, q);
    if (w != 0.0) s += static_cast<long double>(w) * f(r);
  }
  return static_cast<double>(s);
}

// Incomplete beta by quadrature after u = q - v^2 near the upper limit so
// that a (1-u)^{n-1} singularity at u -> 1 is handled when q < 1.
inline double IncBetaQuad(double q, double m, double n) {
  auto g = [m, n](double u) {
    return std::pow(u, m - 1.0) * std::pow(1.0 - u, n - 1.0);
  };
  if (m >= 1.0) return Integrate(g, 0.0, q);
  // u = t^{1/m} removes the u^{m-1} singularity at 0.
  auto h = [m, n](double t) {
    double u = std::pow(t, 1.0 / m);
    return std::pow(1.0 - u, n - 1.0) / m;
  };
  return Integrate(h, 0.0, std::pow(q, m));
}

inline double GammaL(double x) {
  return static_cast<double>(std::tgamma(static_cast<long double>(x)));
}

// sum_{m=1..n} Gamma(m - b) / Gamma(m), term by term in log space.
inline double GammaRatioDirect(int64_t n, double b) {
  long double s = 0.0L;
  for (int64_t m = 1; m <= n; ++m) {
    s += std::exp(std::lgamma(static_cast<long double>(m) - b) -
                  std::lgamma(static_cast<long double>(m)));
  }
  return static_cast<double>(s);
}

inline double BetaL(double m, double n) {
  return static_cast<double>(std::tgamma(static_cast<long double>(m)) *
                             std::tgamma(static_cast<long double>(n)) /
                             std::tgamma(static_cast<long double>(m + n)));
}

// Minimizer of a unimodal f on [a, b].
inline double GoldenMin(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-7) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol * (1.0 + std::fabs(a) + std::fabs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

inline double RelErr(double a, double b) {
  double d = std::fabs(a - b);
  double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? d : d / s;
}

}  // namespace oracle

#endif  // LAGGARD_TESTS_ORACLES_H
