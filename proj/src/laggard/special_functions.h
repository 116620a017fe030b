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

#ifndef LAGGARD_SPECIAL_FUNCTIONS_H
#define LAGGARD_SPECIAL_FUNCTIONS_H

#include <cstdint>
#include <functional>

namespace laggard {

// H_x for real x >= 0.
double Harmonic(double x);
// sum_{i=1..n} 1/i^2
double GenHarmonic2(int64_t n);

double GammaFn(double x);
// log|Gamma(x)|; *sign receives the sign of Gamma(x) when non-null.
double LogAbsGamma(double x, int* sign = nullptr);

double Beta(double m, double n);
double LogAbsBeta(double m, double n, int* sign = nullptr);

// B(q; m, n) = int_0^q u^{m-1} (1-u)^{n-1} du, any real n.
double IncBeta(double q, double m, double n);
// I(q; m, n) = B(q; m, n) / B(m, n).
double RegIncBeta(double q, double m, double n);

// Gamma(n+1-b) / ((1-b) Gamma(n)).
double GammaRatioSum(int64_t n, double beta_param);

// E[f(R)] for R ~ Binomial(k, q).
double BinomExpect(const std::function<double(int64_t)>& f, int64_t k,
                   double q);
double ApproxBinomHarmonic(double n, int64_t k, double q);
double ApproxBinomRegIncBeta(double z, double x, double y, int64_t k,
                             double q);

}  // namespace laggard

#endif  // LAGGARD_SPECIAL_FUNCTIONS_H
