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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "laggard/errors.h"
#include "laggard/special_functions.h"
#include "oracles.h"

namespace laggard {
namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInstability;
}

TEST(Harmonic, SmallValues) {
  EXPECT_DOUBLE_EQ(Harmonic(0), 0.0);
  EXPECT_DOUBLE_EQ(Harmonic(1), 1.0);
  EXPECT_NEAR(Harmonic(3), 11.0 / 6.0, 1e-15);
  EXPECT_NEAR(Harmonic(0.5), 2.0 - 2.0 * std::log(2.0), 1e-13);
}

TEST(Harmonic, MatchesFiniteSumForIntegers) {
  for (int64_t n : {1, 2, 7, 50, 255, 256, 257, 1000, 12345, 1000000}) {
    EXPECT_LT(oracle::RelErr(Harmonic(n), oracle::HarmonicSum(n)), 1e-12)
        << n;
  }
}

TEST(Harmonic, RealArgumentMatchesIntegral) {
  // H_x = int_0^1 (1 - u^x) / (1 - u) du
  for (double x : {0.25, 1.5, 3.7, 17.2, 130.9}) {
    double ref = oracle::Integrate(
        [x](double u) { return (1.0 - std::pow(u, x)) / (1.0 - u); }, 0.0,
        1.0, 1e-14, 20);
    EXPECT_LT(oracle::RelErr(Harmonic(x), ref), 1e-10) << x;
  }
}

TEST(Harmonic, RecurrenceOverReals) {
  for (double x = 0.05; x < 40.0; x += 0.37) {
    EXPECT_NEAR(Harmonic(x + 1) - Harmonic(x), 1.0 / (x + 1), 1e-12) << x;
  }
}

TEST(Harmonic, RejectsNegative) {
  EXPECT_EQ(KindOf([] { Harmonic(-0.5); }), ErrorKind::kDomain);
}

TEST(GenHarmonic2, SmallAndLimit) {
  EXPECT_DOUBLE_EQ(GenHarmonic2(1), 1.0);
  EXPECT_NEAR(GenHarmonic2(2), 1.25, 1e-15);
  EXPECT_NEAR(GenHarmonic2(2000000), std::numbers::pi * std::numbers::pi / 6,
              1e-6);
}

TEST(GammaFn, KnownValues) {
  EXPECT_NEAR(GammaFn(5), 24.0, 1e-12);
  EXPECT_NEAR(GammaFn(0.5), kSqrtPi, 1e-14);
  EXPECT_NEAR(GammaFn(-0.5), -2.0 * kSqrtPi, 1e-13);
}

TEST(GammaFn, RecurrenceOnGrid) {
  for (double x = -4.95; x <= 20.0; x += 0.1) {
    if (std::fabs(x - std::round(x)) < 1e-9 && x <= 0) continue;
    EXPECT_LT(oracle::RelErr(GammaFn(x + 1), x * GammaFn(x)), 1e-10) << x;
  }
}

TEST(GammaFn, MatchesLongDoubleReference) {
  for (double x : {-3.3, -0.7, 0.1, 1.9, 7.25, 33.3}) {
    EXPECT_LT(oracle::RelErr(GammaFn(x), oracle::GammaL(x)), 1e-13) << x;
  }
}

TEST(GammaFn, PolesAreErrors) {
  for (double x : {0.0, -1.0, -7.0}) {
    EXPECT_EQ(KindOf([x] { GammaFn(x); }), ErrorKind::kPole) << x;
  }
}

TEST(LogAbsGamma, SignAndMagnitude) {
  int sign = 0;
  double v = LogAbsGamma(-0.5, &sign);
  EXPECT_EQ(sign, -1);
  EXPECT_NEAR(v, std::log(2 * kSqrtPi), 1e-13);
  v = LogAbsGamma(-1.5, &sign);
  EXPECT_EQ(sign, 1);
  EXPECT_NEAR(v, std::log(4 * kSqrtPi / 3), 1e-13);
  EXPECT_NEAR(LogAbsGamma(200.5), std::lgamma(200.5), 1e-10);
}

TEST(Beta, KnownValues) {
  EXPECT_NEAR(Beta(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(Beta(2, 3), 1.0 / 12.0, 1e-15);
}

TEST(Beta, NegativeParameterMatchesGammaRelation) {
  double ref = oracle::GammaL(3.5) * oracle::GammaL(-0.4) / oracle::GammaL(3.1);
  EXPECT_LT(oracle::RelErr(Beta(3.5, -0.4), ref), 1e-12);
  EXPECT_LT(oracle::RelErr(Beta(-1.3, 4.1), oracle::BetaL(-1.3, 4.1)), 1e-12);
}

TEST(Beta, Symmetric) {
  for (double m : {0.3, 1.7, 4.0, -0.6}) {
    for (double n : {0.9, 2.5, 11.0}) {
      EXPECT_LT(oracle::RelErr(Beta(m, n), Beta(n, m)), 1e-13);
    }
  }
}

TEST(Beta, PoleIsError) {
  EXPECT_EQ(KindOf([] { Beta(-1.0, 2.5); }), ErrorKind::kPole);
  EXPECT_EQ(KindOf([] { Beta(0.5, 0.0); }), ErrorKind::kPole);
}

TEST(IncBeta, Endpoints) {
  EXPECT_EQ(IncBeta(0.0, 2.0, 3.0), 0.0);
  EXPECT_EQ(IncBeta(0.0, 1.5, -0.5), 0.0);
  EXPECT_NEAR(IncBeta(1.0, 2.0, 3.0), 1.0 / 12.0, 1e-15);
}

TEST(IncBeta, ZeroSecondParameterMatchesQuadrature) {
  // int_0^0.5 u^2/(1-u) du = ln 2 - 5/8
  EXPECT_NEAR(IncBeta(0.5, 3, 0), std::log(2.0) - 0.625, 1e-13);
  for (double q : {0.01, 0.3, 0.77, 0.99}) {
    for (double m : {1.0, 2.5, 11.0}) {
      EXPECT_LT(oracle::RelErr(IncBeta(q, m, 0), oracle::IncBetaQuad(q, m, 0)),
                1e-9)
          << q << " " << m;
    }
  }
}

TEST(IncBeta, NegativeSecondParameterMatchesQuadrature) {
  for (double q : {0.1, 0.5, 0.9}) {
    for (double n : {-0.1, -0.5, -0.83}) {
      double ref = oracle::IncBetaQuad(q, 4.2, n);
      EXPECT_LT(oracle::RelErr(IncBeta(q, 4.2, n), ref), 1e-9)
          << q << " " << n;
    }
  }
}

TEST(IncBeta, PositiveParametersMatchQuadrature) {
  for (double q : {0.05, 0.4, 0.95}) {
    for (double m : {0.4, 1.0, 3.3}) {
      for (double n : {0.6, 2.0, 9.0}) {
        double ref = oracle::IncBetaQuad(q, m, n);
        EXPECT_LT(oracle::RelErr(IncBeta(q, m, n), ref), 1e-9)
            << q << " " << m << " " << n;
      }
    }
  }
}

TEST(IncBeta, Errors) {
  EXPECT_EQ(KindOf([] { IncBeta(1.0, 2.0, 0.0); }), ErrorKind::kDivergence);
  EXPECT_EQ(KindOf([] { IncBeta(1.0, 2.0, -0.3); }), ErrorKind::kDivergence);
  EXPECT_EQ(KindOf([] { IncBeta(1.2, 2.0, 1.0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { IncBeta(-0.1, 2.0, 1.0); }), ErrorKind::kDomain);
}

TEST(RegIncBeta, KnownValues) {
  EXPECT_NEAR(RegIncBeta(0.5, 1, 1), 0.5, 1e-15);
  EXPECT_NEAR(RegIncBeta(1.0, 3.2, 0.7), 1.0, 1e-15);
  double ref = oracle::IncBetaQuad(0.3, 4, 2.5) / oracle::BetaL(4, 2.5);
  EXPECT_LT(oracle::RelErr(RegIncBeta(0.3, 4, 2.5), ref), 1e-10);
}

TEST(RegIncBeta, Reflection) {
  for (double q = 0.0; q <= 1.0; q += 0.0625) {
    for (double m : {0.2, 1.0, 3.5, 40.0}) {
      for (double n : {0.5, 2.0, 17.0}) {
        EXPECT_NEAR(RegIncBeta(q, m, n) + RegIncBeta(1 - q, n, m), 1.0, 1e-10)
            << q << " " << m << " " << n;
      }
    }
  }
}

TEST(RegIncBeta, MonotoneInUpperLimit) {
  double prev = 0.0;
  for (double q = 0.0; q <= 1.0; q += 0.01) {
    double v = RegIncBeta(q, 2.7, 5.1);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
}

TEST(GammaRatioSum, Examples) {
  EXPECT_NEAR(GammaRatioSum(3, 0.5), 15 * kSqrtPi / 8, 1e-12);
  EXPECT_NEAR(GammaRatioSum(1, 0.5), kSqrtPi, 1e-13);
  EXPECT_LT(oracle::RelErr(GammaRatioSum(10, 0.25),
                           oracle::GammaL(10.75) / (0.75 * oracle::GammaL(10))),
            1e-12);
}

TEST(GammaRatioSum, EqualsDirectSummation) {
  for (int64_t n = 1; n <= 200; ++n) {
    for (int i = 1; i <= 9; ++i) {
      double b = i / 10.0;
      EXPECT_LT(oracle::RelErr(GammaRatioSum(n, b), oracle::GammaRatioDirect(n, b)),
                1e-9)
          << n << " " << b;
    }
  }
}

TEST(GammaRatioSum, Domain) {
  EXPECT_EQ(KindOf([] { GammaRatioSum(0, 0.5); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { GammaRatioSum(3, 1.0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { GammaRatioSum(3, 0.0); }), ErrorKind::kDomain);
}

TEST(BinomExpect, MeanAndNormalization) {
  EXPECT_NEAR(BinomExpect([](int64_t r) { return double(r); }, 10, 0.3), 3.0,
              1e-13);
  EXPECT_NEAR(BinomExpect([](int64_t) { return 1.0; }, 37, 0.61), 1.0, 1e-13);
  EXPECT_NEAR(BinomExpect([](int64_t r) { return double(r * r); }, 20, 0.25),
              20 * 0.25 * 0.75 + 25.0, 1e-11);
}

TEST(BinomExpect, MatchesIndependentSum) {
  auto f = [](int64_t r) { return Harmonic(20 - r); };
  EXPECT_LT(oracle::RelErr(BinomExpect(f, 10, 0.4),
                           oracle::BinomSum(
                               [](int64_t r) {
                                 return oracle::HarmonicSum(20 - r);
                               },
                               10, 0.4)),
            1e-13);
  for (int64_t k : {1, 5, 60, 400}) {
    for (double q : {0.0, 0.01, 0.5, 0.93, 1.0}) {
      auto g = [](int64_t r) { return std::sqrt(double(r) + 1.0); };
      EXPECT_LT(oracle::RelErr(BinomExpect(g, k, q), oracle::BinomSum(g, k, q)),
                1e-11)
          << k << " " << q;
    }
  }
}

TEST(BinomExpect, NonFiniteIsEvaluationError) {
  auto f = [](int64_t r) {
    return r == 2 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  EXPECT_EQ(KindOf([&] { BinomExpect(f, 5, 0.5); }), ErrorKind::kEvaluation);
  EXPECT_EQ(KindOf([] { BinomExpect([](int64_t) { return 1.0; }, 3, 1.5); }),
            ErrorKind::kDomain);
}

TEST(ApproxBinomHarmonic, ExactAtDegenerateBinomial) {
  auto exact = [](double n, int64_t k, double q) {
    return BinomExpect([n](int64_t r) { return Harmonic(n - r); }, k, q);
  };
  for (int64_t k : {1, 10, 30}) {
    double n = 2.0 * k + 3;
    EXPECT_EQ(ApproxBinomHarmonic(n, k, 0.0), exact(n, k, 0.0));
    EXPECT_NEAR(ApproxBinomHarmonic(n, k, 1.0), exact(n, k, 1.0), 1e-14);
  }
}

TEST(ApproxBinomHarmonic, CloseForLargeK) {
  double exact = BinomExpect([](int64_t r) { return Harmonic(20 - r); }, 10, 0.4);
  EXPECT_NEAR(ApproxBinomHarmonic(20, 10, 0.4), Harmonic(16), 1e-14);
  EXPECT_LT(oracle::RelErr(ApproxBinomHarmonic(20, 10, 0.4), exact), 0.05);
  for (int64_t k : {10, 50, 200}) {
    for (double q : {0.1, 0.5, 0.9}) {
      double n = 2.0 * k;
      double ex =
          BinomExpect([n](int64_t r) { return Harmonic(n - r); }, k, q);
      EXPECT_LT(oracle::RelErr(ApproxBinomHarmonic(n, k, q), ex), 0.05);
    }
  }
  EXPECT_EQ(KindOf([] { ApproxBinomHarmonic(3, 10, 0.5); }),
            ErrorKind::kDomain);
}

TEST(ApproxBinomRegIncBeta, ExactAtDegenerateBinomialAndClose) {
  auto exact = [](double z, double x, double y, int64_t k, double q) {
    return BinomExpect(
        [=](int64_t r) { return RegIncBeta(z, x - r, y); }, k, q);
  };
  EXPECT_EQ(ApproxBinomRegIncBeta(0.6, 12, 5, 8, 0.0),
            exact(0.6, 12, 5, 8, 0.0));
  EXPECT_NEAR(ApproxBinomRegIncBeta(0.6, 12, 5, 8, 1.0),
              exact(0.6, 12, 5, 8, 1.0), 1e-14);
  double approx = ApproxBinomRegIncBeta(0.6, 12, 5, 8, 0.5);
  EXPECT_NEAR(approx, RegIncBeta(0.6, 8, 5), 1e-15);
  EXPECT_LT(oracle::RelErr(approx, exact(0.6, 12, 5, 8, 0.5)), 0.05);
  EXPECT_EQ(KindOf([] { ApproxBinomRegIncBeta(0.6, 4, 5, 8, 0.5); }),
            ErrorKind::kDomain);
}

}  // namespace
}  // namespace laggard
