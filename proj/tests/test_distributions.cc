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
#include <filesystem>
#include <fstream>
#include <vector>

#include "laggard/distributions.h"
#include "laggard/errors.h"
#include "oracles.h"

namespace laggard {
namespace {

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInstability;
}

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments SampleMoments(const std::vector<double>& xs) {
  long double s = 0.0L;
  long double s2 = 0.0L;
  for (double x : xs) {
    s += x;
    s2 += static_cast<long double>(x) * x;
  }
  double n = static_cast<double>(xs.size());
  double mean = static_cast<double>(s / n);
  double var = static_cast<double>((s2 - s * s / n) / (n - 1));
  return {mean, std::sqrt(var / n)};
}

// Draws the i-th smallest of n iid samples, `reps` times.
std::vector<double> OrderStatDraws(const TaskDist& d, int n, int i, int reps,
                                   uint64_t seed) {
  Rng rng(seed);
  Sampler draw(d);
  std::vector<double> out;
  std::vector<double> buf(n);
  for (int r = 0; r < reps; ++r) {
    for (auto& x : buf) x = draw(rng);
    std::nth_element(buf.begin(), buf.begin() + (i - 1), buf.end());
    out.push_back(buf[i - 1]);
  }
  return out;
}

TEST(Rng, DeterministicPerSeed) {
  Rng a(7);
  Rng b(7);
  Rng c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs |= x != c.Next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, UniformRanges) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    double u = rng.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    double v = rng.UniformOpenLow();
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Sample, ParetoIsInverseCdf) {
  Rng a(99);
  Rng b(99);
  TaskDist d = MakePareto(1.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    double u = b.Uniform();
    EXPECT_NEAR(Sample(d, a), std::pow(1.0 - u, -0.5), 1e-12);
  }
}

TEST(Sample, SExpMean) {
  Rng rng(5);
  Sampler draw(MakeSExp(1.0, 1.0));
  std::vector<double> xs(1000000);
  for (auto& x : xs) x = draw(rng);
  Moments m = SampleMoments(xs);
  EXPECT_LT(std::fabs(m.mean - 2.0), 3 * m.se);
  EXPECT_GE(*std::min_element(xs.begin(), xs.end()), 1.0);
}

TEST(Sample, EmpiricalSingleton) {
  Rng rng(3);
  TaskDist d = EmpiricalFromSamples({3.0});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(Sample(d, rng), 3.0);
}

TEST(Sample, EmpiricalDrawsStoredValues) {
  Rng rng(4);
  TaskDist d = EmpiricalFromSamples({1.0, 2.0, 5.0, 9.0});
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 40000; ++i) {
    double x = Sample(d, rng);
    if (x == 1.0) ++counts[0];
    else if (x == 2.0) ++counts[1];
    else if (x == 5.0) ++counts[2];
    else if (x == 9.0) ++counts[3];
    else ADD_FAILURE() << x;
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 4 * std::sqrt(10000 * 0.75));
}

TEST(Tail, Examples) {
  EXPECT_DOUBLE_EQ(Tail(MakePareto(1, 2), 2), 0.25);
  EXPECT_NEAR(Tail(MakeSExp(1, 1), 2), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(Tail(MakeExp(0.5), 3), std::exp(-1.5), 1e-15);
  for (const TaskDist& d :
       {MakeExp(2), MakeSExp(1, 3), MakePareto(2, 1.5),
        MakeTruncatedPareto(1, 100, 1.1), EmpiricalFromSamples({1, 2})}) {
    EXPECT_EQ(Tail(d, 0.0), 1.0);
  }
}

TEST(Tail, EmpiricalStrictlyGreater) {
  TaskDist d = EmpiricalFromSamples({1, 2, 2, 3});
  EXPECT_EQ(Tail(d, 2.0), 0.25);
  EXPECT_EQ(Tail(d, 1.5), 0.75);
  EXPECT_EQ(Tail(d, 3.0), 0.0);
}

TEST(Tail, TruncatedParetoBounds) {
  TaskDist d = MakeTruncatedPareto(1, 10, 2);
  EXPECT_EQ(Tail(d, 10.0), 0.0);
  EXPECT_EQ(Tail(d, 20.0), 0.0);
  double mass = 1 - std::pow(0.1, 2);
  EXPECT_NEAR(Tail(d, 2.0), (0.25 - 0.01) / mass, 1e-14);
  EXPECT_NEAR(Cdf(d, 2.0) + Tail(d, 2.0), 1.0, 1e-15);
}

TEST(Tail, SamplingMatchesOnGrid) {
  struct Case {
    TaskDist d;
    std::vector<double> grid;
  };
  std::vector<Case> cases = {
      {MakeExp(1.5), {0.1, 0.3, 0.7, 1.2, 2.5}},
      {MakeSExp(1, 2), {1.05, 1.2, 1.5, 2.0, 3.0}},
      {MakePareto(1, 2), {1.1, 1.5, 2, 4, 10}},
      {MakePareto(2, 1.2), {2.1, 3, 6, 20, 100}},
      {MakeTruncatedPareto(1, 1e10, 1.1), {1.2, 2, 5, 50, 1000}},
      {MakeTruncatedPareto(1, 5, 0.7), {1.2, 2, 3, 4, 4.9}},
      {EmpiricalFromSamples({0.5, 1, 1.5, 2, 7}), {0.4, 0.9, 1.5, 3, 6}},
  };
  uint64_t seed = 11;
  for (const auto& c : cases) {
    Rng rng(seed++);
    Sampler draw(c.d);
    const int n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = draw(rng);
    for (double t : c.grid) {
      double p = Tail(c.d, t);
      double emp =
          std::count_if(xs.begin(), xs.end(), [t](double x) { return x > t; }) /
          double(n);
      double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
      EXPECT_LE(std::fabs(emp - p), 3 * se + 1e-12)
          << DescribeDist(c.d) << " t=" << t;
    }
  }
}

TEST(DistMean, Closed) {
  EXPECT_DOUBLE_EQ(DistMean(MakePareto(1, 2)), 2.0);
  EXPECT_DOUBLE_EQ(DistMean(MakeSExp(2, 0.5)), 4.0);
  EXPECT_DOUBLE_EQ(DistMean(MakeExp(4)), 0.25);
  EXPECT_DOUBLE_EQ(DistMean(EmpiricalFromSamples({1, 2, 6})), 3.0);
  EXPECT_EQ(KindOf([] { DistMean(MakePareto(1, 1)); }),
            ErrorKind::kInfiniteMoment);
  EXPECT_EQ(KindOf([] { DistMean(MakePareto(1, 0.5)); }),
            ErrorKind::kInfiniteMoment);
}

TEST(DistMean, TruncatedParetoMatchesQuadratureAndSampling) {
  for (auto [s, u, a] : std::vector<std::array<double, 3>>{
           {1, 10, 2}, {1, 1000, 1.0}, {2, 50, 0.6}, {1, 1e4, 1.1}}) {
    TaskDist d = MakeTruncatedPareto(s, u, a);
    double mass = 1 - std::pow(s / u, a);
    // E[X] = s + int_s^u Pr{X > t} dt, split on a log scale.
    double ref = s;
    double lo = s;
    while (lo < u) {
      double hi = std::min(u, lo * 2);
      ref += oracle::Integrate(
          [&](double t) {
            return (std::pow(s / t, a) - std::pow(s / u, a)) / mass;
          },
          lo, hi);
      lo = hi;
    }
    EXPECT_LT(oracle::RelErr(DistMean(d), ref), 1e-9) << s << " " << u << " " << a;
  }
}

TEST(DistMean, TruncatedParetoBulkMatchesSampling) {
  // With u = 1e10 the sample variance is of order u^{0.9}, so the plain
  // sample mean is not a usable check. Split at c: the bulk E[X; X <= c]
  // has finite variance and is compared against sampling, the remainder
  // E[X; X > c] comes from the closed form.
  const double s = 1, u = 1e10, a = 1.1, c = 1e4;
  TaskDist d = MakeTruncatedPareto(s, u, a);
  double mass = 1 - std::pow(s / u, a);
  auto partial = [&](double lo, double hi) {
    // int_lo^hi t f(t) dt with f(t) = a s^a t^{-a-1} / mass
    return a * std::pow(s, a) / mass *
           (std::pow(lo, 1 - a) - std::pow(hi, 1 - a)) / (a - 1);
  };
  EXPECT_LT(oracle::RelErr(partial(s, c) + partial(c, u), DistMean(d)), 1e-12);
  Rng rng(21);
  Sampler draw(d);
  std::vector<double> xs(1000000);
  for (auto& x : xs) {
    double v = draw(rng);
    x = v <= c ? v : 0.0;
  }
  Moments m = SampleMoments(xs);
  EXPECT_LT(std::fabs(m.mean - partial(s, c)), 3 * m.se);
}

TEST(Validate, RejectsBadParameters) {
  EXPECT_EQ(KindOf([] { MakeExp(0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { MakeSExp(-1, 1); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { MakePareto(1, 0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { MakeTruncatedPareto(2, 2, 1); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { EmpiricalFromSamples({}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { EmpiricalFromSamples({1, 0}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { EmpiricalFromSamples({1, -2}); }), ErrorKind::kDomain);
}

TEST(Empirical, SortsAndApproximatesSource) {
  TaskDist d = EmpiricalFromSamples({3, 1, 2});
  const auto& e = std::get<EmpiricalDist>(d);
  EXPECT_EQ(*e.samples, (std::vector<double>{1, 2, 3}));
  Rng rng(8);
  std::vector<double> xs(10000);
  TaskDist p = MakePareto(1, 2);
  for (auto& x : xs) x = Sample(p, rng);
  EXPECT_NEAR(Tail(EmpiricalFromSamples(xs), 2.0), 0.25, 0.02);
}

TEST(ParseDist, Grammar) {
  EXPECT_EQ(DescribeDist(ParseDist("exp:2")), "exp:2");
  EXPECT_EQ(DescribeDist(ParseDist("sexp:1,0.5")), "sexp:1,0.5");
  EXPECT_EQ(DescribeDist(ParseDist("pareto:1,2")), "pareto:1,2");
  EXPECT_EQ(DescribeDist(ParseDist("tpareto:1,1e10,1.1")),
            "tpareto:1,1e+10,1.1");
  EXPECT_EQ(DescribeDist(ParseDist("point:4")), "empirical[1]");
  for (const char* bad :
       {"pareto", "pareto:1", "pareto:1,2,3", "gauss:1", "exp:x", "exp:-1",
        "tpareto:2,1,1", ""}) {
    EXPECT_EQ(KindOf([bad] { ParseDist(bad); }), ErrorKind::kDomain) << bad;
  }
}

TEST(SampleFile, RoundTripAndComments) {
  auto dir = std::filesystem::temp_directory_path() / "laggard_dist_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "s.txt").string();
  std::vector<double> xs = {0.1, 3.0, 1e-7, 12345.678901234567};
  WriteSampleFile(path, xs);
  EXPECT_EQ(ReadSampleFile(path), xs);
  {
    std::ofstream out(path);
    out << "# header\n1.5\n\n  2.5  \n# tail\n";
  }
  EXPECT_EQ(ReadSampleFile(path), (std::vector<double>{1.5, 2.5}));
  {
    std::ofstream out(path);
    out << "1.5\nabc\n";
  }
  EXPECT_EQ(KindOf([&] { ReadSampleFile(path); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([&] { ReadSampleFile((dir / "missing").string()); }),
            ErrorKind::kIO);
  EXPECT_EQ(KindOf([&] { ParseDist("empirical:" + (dir / "nope").string()); }),
            ErrorKind::kIO);
  WriteSampleFile(path, {4.0, 2.0});
  TaskDist d = ParseDist("empirical:" + path);
  EXPECT_EQ(*std::get<EmpiricalDist>(d).samples,
            (std::vector<double>{2.0, 4.0}));
}

TEST(OrderStatMean, Examples) {
  EXPECT_NEAR(OrderStatMean(MakeExp(1), 2, 2), 1.5, 1e-15);
  EXPECT_NEAR(OrderStatMean(MakePareto(1, 2), 1, 1), 2.0, 1e-14);
  EXPECT_NEAR(OrderStatMean(MakeExp(2), 5, 1), 0.1, 1e-15);
}

TEST(OrderStatMean, MatchesSampling) {
  struct Case {
    TaskDist d;
    int n;
    int i;
  };
  std::vector<Case> cases = {{MakePareto(1, 2), 10, 10},
                             {MakePareto(1, 3), 10, 7},
                             {MakePareto(1, 1.5), 20, 3},
                             {MakeExp(1), 10, 10},
                             {MakeExp(0.5), 6, 2}};
  uint64_t seed = 40;
  for (const auto& c : cases) {
    auto xs = OrderStatDraws(c.d, c.n, c.i, 100000, seed++);
    Moments m = SampleMoments(xs);
    EXPECT_LT(std::fabs(m.mean - OrderStatMean(c.d, c.n, c.i)), 3 * m.se)
        << DescribeDist(c.d) << " n=" << c.n << " i=" << c.i;
  }
}

TEST(OrderStatMean, Monotone) {
  for (const TaskDist& d : {MakeExp(1.3), MakePareto(1, 1.5), MakePareto(2, 3)}) {
    for (int n = 1; n <= 30; ++n) {
      for (int i = 1; i < n; ++i) {
        EXPECT_LT(OrderStatMean(d, n, i), OrderStatMean(d, n, i + 1));
      }
      if (n < 30) {
        for (int i = 1; i <= n; ++i) {
          EXPECT_GT(OrderStatMean(d, n, i), OrderStatMean(d, n + 1, i));
        }
      }
    }
  }
}

TEST(OrderStatMean, Errors) {
  // The max of 2 Pareto(1, 0.5) draws has tail ~ 2 t^{-1/2}: infinite mean.
  EXPECT_EQ(KindOf([] { OrderStatMean(MakePareto(1, 0.5), 2, 2); }),
            ErrorKind::kInfiniteMoment);
  EXPECT_NO_THROW(OrderStatMean(MakePareto(1, 0.5), 3, 1));
  EXPECT_EQ(KindOf([] { OrderStatMean(MakeExp(1), 3, 4); }),
            ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { OrderStatMean(MakeExp(1), 3, 0); }),
            ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { OrderStatMean(MakeSExp(1, 1), 3, 1); }),
            ErrorKind::kUnsupported);
}

TEST(ExpJointMoment, Examples) {
  EXPECT_NEAR(ExpJointMoment(1, 1, 1, 1), 2.0, 1e-14);
  EXPECT_NEAR(ExpJointMoment(2, 2, 2, 1), 3.5, 1e-14);
  EXPECT_NEAR(ExpJointMoment(1, 1, 1, 2), 0.5, 1e-15);
}

TEST(ExpJointMoment, MatchesSampling) {
  Rng rng(77);
  Sampler draw(MakeExp(1));
  const int reps = 200000;
  struct Acc {
    int n, i, j;
    std::vector<double> prod;
  };
  std::vector<Acc> accs = {{2, 2, 2, {}}, {3, 1, 2, {}}, {5, 2, 4, {}},
                           {4, 1, 4, {}}};
  for (auto& a : accs) {
    std::vector<double> buf(a.n);
    for (int r = 0; r < reps; ++r) {
      for (auto& x : buf) x = draw(rng);
      std::sort(buf.begin(), buf.end());
      a.prod.push_back(buf[a.i - 1] * buf[a.j - 1]);
    }
    Moments m = SampleMoments(a.prod);
    EXPECT_LT(std::fabs(m.mean - ExpJointMoment(a.n, a.i, a.j, 1)), 3 * m.se)
        << a.n << " " << a.i << " " << a.j;
  }
}

TEST(ExpJointMoment, VarianceNonNegative) {
  for (int n = 1; n <= 40; ++n) {
    for (int i = 1; i <= n; ++i) {
      double m1 = OrderStatMean(MakeExp(0.7), n, i);
      EXPECT_GE(ExpJointMoment(n, i, i, 0.7), m1 * m1);
    }
  }
  EXPECT_EQ(KindOf([] { ExpJointMoment(3, 2, 1, 1); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { ExpJointMoment(3, 1, 4, 1); }), ErrorKind::kDomain);
}

double ParetoSecondMoment(int n, int i, double s, double a) {
  return s * s *
         std::exp(std::lgamma(n + 1.0) - std::lgamma(n - i + 1.0) +
                  std::lgamma(n - i + 1 - 2 / a) - std::lgamma(n + 1 - 2 / a));
}

TEST(ParetoJointMoment, Examples) {
  EXPECT_NEAR(ParetoJointMoment(1, 1, 1, 1, 3), 3.0, 1e-13);
  EXPECT_EQ(KindOf([] { ParetoJointMoment(3, 2, 2, 1, 1.0); }),
            ErrorKind::kInfiniteMoment);
  EXPECT_EQ(KindOf([] { ParetoJointMoment(1, 1, 1, 1, 2.0); }),
            ErrorKind::kInfiniteMoment);
}

TEST(ParetoJointMoment, DiagonalIsMarginalSecondMoment) {
  for (double a : {1.2, 2.5, 4.0}) {
    for (int n = 1; n <= 25; ++n) {
      for (int i = 1; i <= n; ++i) {
        if (a <= 2.0 / (n - i + 1)) continue;
        EXPECT_LT(oracle::RelErr(ParetoJointMoment(n, i, i, 1.5, a),
                                 ParetoSecondMoment(n, i, 1.5, a)),
                  1e-10)
            << n << " " << i << " " << a;
      }
    }
  }
}

TEST(ParetoJointMoment, MatchesSamplingOnGrid) {
  struct Case {
    int n, i, j;
    double a;
  };
  // Ten points where the product has a finite variance.
  std::vector<Case> cases = {{2, 1, 1, 3},  {2, 1, 2, 5},  {3, 1, 2, 4},
                             {4, 2, 3, 3},  {5, 1, 5, 5},  {5, 3, 4, 2.5},
                             {6, 2, 2, 2.5}, {8, 4, 6, 3}, {10, 1, 9, 4},
                             {10, 5, 5, 2}};
  uint64_t seed = 500;
  for (const auto& c : cases) {
    Rng rng(seed++);
    Sampler draw(MakePareto(1, c.a));
    std::vector<double> buf(c.n);
    std::vector<double> prod;
    for (int r = 0; r < 200000; ++r) {
      for (auto& x : buf) x = draw(rng);
      std::sort(buf.begin(), buf.end());
      prod.push_back(buf[c.i - 1] * buf[c.j - 1]);
    }
    Moments m = SampleMoments(prod);
    EXPECT_LT(std::fabs(m.mean - ParetoJointMoment(c.n, c.i, c.j, 1, c.a)),
              3 * m.se)
        << c.n << " " << c.i << " " << c.j << " " << c.a;
  }
}

}  // namespace
}  // namespace laggard
