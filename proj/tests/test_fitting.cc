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

#include <algorithm>
#include <cmath>
#include <functional>
#include <variant>
#include <vector>

#include "laggard/distributions.h"
#include "laggard/errors.h"
#include "laggard/fitting.h"

namespace laggard {
namespace {

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kEvaluation;
}

std::vector<double> Draw(const TaskDist& d, int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = Sample(d, rng);
  return out;
}

// Log-likelihood summed term by term from the density.
double ParetoLogLik(const std::vector<double>& xs, double s, double a) {
  double ll = 0.0;
  for (double x : xs) ll += std::log(a * std::pow(s, a) / std::pow(x, a + 1));
  return ll;
}

double TruncParetoLogLik(const std::vector<double>& xs, double s, double u,
                         double a) {
  double norm = 1.0 - std::pow(s / u, a);
  double ll = 0.0;
  for (double x : xs) {
    ll += std::log(a * std::pow(s, a) / std::pow(x, a + 1) / norm);
  }
  return ll;
}

TEST(FitPareto, RecoversParameters) {
  for (double alpha : {1.1, 1.5, 2.5}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      auto xs = Draw(ParetoDist{2.0, alpha}, 20000, seed);
      FitResult f = FitPareto(xs);
      const auto& p = std::get<ParetoDist>(f.dist);
      // Relative sd of the estimator is about 1/sqrt(n) = 0.7 percent.
      EXPECT_NEAR(p.alpha, alpha, 0.03 * alpha) << alpha << " " << seed;
      EXPECT_EQ(p.s, *std::min_element(xs.begin(), xs.end()));
      EXPECT_EQ(f.n_samples, 20000);
    }
  }
}

TEST(FitPareto, UnbiasedOnAverage) {
  // (n-1)/sum is unbiased for alpha when s is known exactly; with the sample
  // minimum the bias is O(1/n). Averaging many small fits exposes it.
  double total = 0.0;
  const int reps = 2000;
  for (int r = 0; r < reps; ++r) {
    total += std::get<ParetoDist>(FitPareto(Draw(ParetoDist{1.0, 2.0}, 50, 100 + r)).dist).alpha;
  }
  EXPECT_NEAR(total / reps, 2.0, 0.06);
}

TEST(FitPareto, LogLikelihoodMatchesDensitySum) {
  auto xs = Draw(ParetoDist{1.0, 1.7}, 500, 3);
  FitResult f = FitPareto(xs);
  const auto& p = std::get<ParetoDist>(f.dist);
  EXPECT_NEAR(f.log_likelihood, ParetoLogLik(xs, p.s, p.alpha),
              1e-9 * std::fabs(f.log_likelihood));
}

TEST(FitTruncatedPareto, RecoversParameters) {
  for (double alpha : {0.8, 1.1, 2.0}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      auto xs = Draw(TruncParetoDist{1.0, 1000.0, alpha}, 20000, seed);
      FitResult f = FitTruncatedPareto(xs);
      const auto& p = std::get<TruncParetoDist>(f.dist);
      EXPECT_NEAR(p.alpha, alpha, 0.05 * alpha) << alpha << " " << seed;
      EXPECT_EQ(p.s, *std::min_element(xs.begin(), xs.end()));
      EXPECT_EQ(p.u, *std::max_element(xs.begin(), xs.end()));
    }
  }
}

TEST(FitTruncatedPareto, ScoreVanishesAndLikelihoodIsMaximal) {
  auto xs = Draw(TruncParetoDist{1.0, 50.0, 1.3}, 3000, 8);
  FitResult f = FitTruncatedPareto(xs);
  const auto& p = std::get<TruncParetoDist>(f.dist);
  double scale = static_cast<double>(xs.size()) / p.alpha;
  EXPECT_NEAR(TruncParetoScore(xs, p.s, p.u, p.alpha) / scale, 0.0, 1e-6);
  double ll = TruncParetoLogLik(xs, p.s, p.u, p.alpha);
  EXPECT_NEAR(f.log_likelihood, ll, 1e-9 * std::fabs(ll));
  for (double da : {-0.05, -0.005, 0.005, 0.05}) {
    EXPECT_LT(TruncParetoLogLik(xs, p.s, p.u, p.alpha + da), ll) << da;
  }
}

TEST(FitTruncatedPareto, ScoreMatchesNumericDerivative) {
  auto xs = Draw(TruncParetoDist{1.0, 20.0, 1.5}, 400, 4);
  const double s = 1.0, u = 20.0;
  for (double a : {0.5, 1.0, 1.5, 3.0}) {
    double h = 1e-5;
    double num = (TruncParetoLogLik(xs, s, u, a + h) -
                  TruncParetoLogLik(xs, s, u, a - h)) / (2 * h);
    EXPECT_NEAR(TruncParetoScore(xs, s, u, a), num, 1e-4 * (1 + std::fabs(num)));
  }
}

TEST(Fit, Errors) {
  EXPECT_EQ(KindOf([] { FitPareto({1.0}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { FitTruncatedPareto({1.0, 2.0}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { FitPareto({1.0, -2.0, 3.0}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { FitPareto({1.0, NAN, 3.0}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { FitPareto({2.0, 2.0, 2.0}); }), ErrorKind::kDegenerate);
  EXPECT_EQ(KindOf([] { FitTruncatedPareto({2.0, 2.0, 2.0}); }),
            ErrorKind::kDegenerate);
  // Samples piled at the top are not decreasing in density anywhere.
  std::vector<double> top(100, 10.0);
  top.push_back(1.0);
  EXPECT_EQ(KindOf([&] { FitTruncatedPareto(top); }), ErrorKind::kConvergence);
}

// Sup-distance between the empirical CDF and the fitted CDF, evaluated on
// both sides of each jump.
double KsOracle(const std::vector<double>& xs, const TaskDist& d) {
  std::vector<double> s = xs;
  std::sort(s.begin(), s.end());
  double n = static_cast<double>(s.size());
  double best = 0.0;
  for (size_t i = 0; i < s.size(); ++i) {
    double f = Cdf(d, s[i]);
    best = std::max({best, std::fabs(f - (i + 1) / n), std::fabs(f - i / n)});
  }
  return best;
}

TEST(Goodness, KsAndTailPoints) {
  auto xs = Draw(ParetoDist{1.0, 1.5}, 5000, 12);
  FitResult f = FitPareto(xs);
  GoodnessReport g = Goodness(f, xs, 15);
  EXPECT_NEAR(g.ks_statistic, KsOracle(xs, f.dist), 1e-12);
  // Critical value at the 1 percent level is about 1.63/sqrt(n).
  EXPECT_LT(g.ks_statistic, 1.63 / std::sqrt(5000.0));
  ASSERT_EQ(g.tail_points.size(), 15u);
  EXPECT_DOUBLE_EQ(g.tail_points.front().t, *std::min_element(xs.begin(), xs.end()));
  EXPECT_NEAR(g.tail_points.back().t, *std::max_element(xs.begin(), xs.end()), 1e-9);
  EXPECT_DOUBLE_EQ(g.tail_points.front().empirical, 1.0);
  for (size_t i = 0; i < g.tail_points.size(); ++i) {
    const auto& p = g.tail_points[i];
    double ge = std::count_if(xs.begin(), xs.end(), [&](double x) { return x >= p.t; });
    EXPECT_NEAR(p.empirical, ge / xs.size(), 1e-12);
    EXPECT_NEAR(p.fitted, Tail(f.dist, p.t), 1e-12);
    if (i) EXPECT_GT(p.t, g.tail_points[i - 1].t);
  }

  auto exp_xs = Draw(ExpDist{1.0}, 5000, 13);
  for (auto& x : exp_xs) x += 1.0;
  EXPECT_GT(Goodness(FitPareto(exp_xs), exp_xs).ks_statistic, 0.1);

  EXPECT_EQ(KindOf([&] { Goodness(f, {}, 10); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([&] { Goodness(f, xs, 1); }), ErrorKind::kDomain);
}

}  // namespace
}  // namespace laggard
