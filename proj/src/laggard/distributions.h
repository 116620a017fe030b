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

#ifndef LAGGARD_DISTRIBUTIONS_H
#define LAGGARD_DISTRIBUTIONS_H

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace laggard {

uint64_t SplitMix64(uint64_t x);

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(SplitMix64(seed)) {}
  // Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform on (0, 1].
  double UniformOpenLow() { return 1.0 - Uniform(); }
  uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct ExpDist {
  double mu;
};
struct SExpDist {
  double s;
  double mu;
};
struct ParetoDist {
  double s;
  double alpha;
};
struct TruncParetoDist {
  double s;
  double u;
  double alpha;
};
struct EmpiricalDist {
  std::shared_ptr<const std::vector<double>> samples;
};

using TaskDist =
    std::variant<ExpDist, SExpDist, ParetoDist, TruncParetoDist, EmpiricalDist>;

TaskDist MakeExp(double mu);
TaskDist MakeSExp(double s, double mu);
TaskDist MakePareto(double s, double alpha);
TaskDist MakeTruncatedPareto(double s, double u, double alpha);
TaskDist EmpiricalFromSamples(std::vector<double> samples);

void ValidateDist(const TaskDist& dist);
std::string DescribeDist(const TaskDist& dist);

// name:params, e.g. "exp:1", "sexp:1,1", "pareto:1,2", "tpareto:1,1e10,1.1",
// "point:3" or "empirical:/path/to/samples.txt".
TaskDist ParseDist(const std::string& text);

double Sample(const TaskDist& dist, Rng& rng);
double Tail(const TaskDist& dist, double t);
double Cdf(const TaskDist& dist, double t);
double DistMean(const TaskDist& dist);

// Branch-free sampler for hot loops; holds a copy of the distribution.
class Sampler {
 public:
  explicit Sampler(const TaskDist& dist);
  double operator()(Rng& rng) const {
    double v = rng.UniformOpenLow();
    switch (kind_) {
      case Kind::kExp:
        return shift_ - std::log(v) * scale_;
      case Kind::kPareto:
        return scale_ * std::exp(-std::log(v) * inv_alpha_);
      case Kind::kTruncPareto:
        return scale_ *
               std::exp(-std::log(1.0 - (1.0 - v) * mass_) * inv_alpha_);
      case Kind::kEmpirical: {
        size_t idx = static_cast<size_t>((1.0 - v) * values_->size());
        if (idx >= values_->size()) idx = values_->size() - 1;
        return (*values_)[idx];
      }
    }
    return 0.0;
  }

 private:
  enum class Kind { kExp, kPareto, kTruncPareto, kEmpirical };
  Kind kind_;
  double shift_ = 0.0;
  double scale_ = 1.0;
  double inv_alpha_ = 1.0;
  double mass_ = 1.0;
  std::shared_ptr<const std::vector<double>> values_;
};

// E[X_{n:i}] for Exp or Pareto.
double OrderStatMean(const TaskDist& dist, int64_t n, int64_t i);
// E[X_{n:i} X_{n:j}], j >= i.
double ExpJointMoment(int64_t n, int64_t i, int64_t j, double mu);
double ParetoJointMoment(int64_t n, int64_t i, int64_t j, double s,
                         double alpha);

std::vector<double> ReadSampleFile(const std::string& path);
void WriteSampleFile(const std::string& path,
                     const std::vector<double>& samples);

}  // namespace laggard

#endif  // LAGGARD_DISTRIBUTIONS_H
