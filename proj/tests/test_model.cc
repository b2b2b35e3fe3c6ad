// Copyright 2026 The iarstream Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "iar/model.h"
#include "iar/sampling.h"
#include "iar/stats.h"
#include "iar/time_series.h"
#include "oracles.h"

namespace iar {
namespace {

TEST(PredictOne, ExactPowers) {
  EXPECT_DOUBLE_EQ(predict_one(0.25, 2.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(predict_one(0.5, 3.0, 1.0), 1.5);
}

TEST(PredictOne, FractionalGapMatchesHighPrecision) {
  // exp(0.5 ln 0.9) * 2 at 40 significant digits, rounded to double.
  EXPECT_NEAR(predict_one(0.9, 2.0, 0.5), 1.8973665961010275, 4e-16);
}

TEST(PredictOne, ShrinksTowardZero) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phi(0.01, 0.99), gap(0.01, 20.0),
      y(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const double yp = y(rng);
    EXPECT_LE(std::abs(predict_one(phi(rng), yp, gap(rng))), std::abs(yp));
  }
}

TEST(PredictOne, RejectsBadInput) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(predict_one(nan, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(predict_one(0.5, inf, 1.0), std::invalid_argument);
  EXPECT_THROW(predict_one(0.5, 1.0, nan), std::invalid_argument);
  EXPECT_THROW(predict_one(0.5, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(predict_one(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(InnovationVariance, MatchesDefinition) {
  EXPECT_NEAR(innovation_variance(0.5, 2.0, 1.0, 0.0), 4.0 * 0.75, 1e-15);
  EXPECT_NEAR(innovation_variance(0.5, 2.0, 2.0, 0.3), 4.0 * (1 - 0.0625) + 0.3,
              1e-15);
  // Tiny gaps keep full relative precision.
  const double v = innovation_variance(0.5, 1.0, 1e-12, 0.0);
  EXPECT_NEAR(v / (-2e-12 * std::log(0.5)), 1.0, 1e-9);
}

TEST(TimeSeriesType, Invariants) {
  EXPECT_THROW(TimeSeries({0, 1}, {1}), std::invalid_argument);
  EXPECT_THROW(TimeSeries({0, 0}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(TimeSeries({1, 0}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(TimeSeries({}, {}), std::invalid_argument);
  EXPECT_THROW(TimeSeries({0, 1}, {1, 2}, {0.0, -1.0}), std::invalid_argument);
  const TimeSeries s({0.0, 0.5, 2.0}, {1, 2, 3});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s.gap(2), 1.5);
  EXPECT_DOUBLE_EQ(s.err_var(1), 0.0);
  EXPECT_EQ(s.head(2).size(), 2u);
}

TEST(IarParamsType, ValidatesAndClamps) {
  EXPECT_THROW(IarParams(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(IarParams(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(IarParams(0.5, 0.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(IarParams(1.0 - 1e-9, 1.0).phi(), kPhiMax);
  EXPECT_DOUBLE_EQ(IarParams(1e-9, 1.0).phi(), kPhiMin);
  EXPECT_DOUBLE_EQ(IarParams(0.3, 2.0).phi(), 0.3);
}

TEST(NegLogLikelihood, MatchesDenseGaussianDensity) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> phi(0.02, 0.98), sigma(0.2, 3.0),
      gap(0.05, 4.0), y(-3.0, 3.0);
  std::uniform_int_distribution<int> len(1, 8);
  for (int inst = 0; inst < 200; ++inst) {
    const int n = len(rng);
    std::vector<double> t, v;
    double now = gap(rng);
    for (int i = 0; i < n; ++i) {
      t.push_back(now);
      v.push_back(y(rng));
      now += gap(rng);
    }
    const double p = phi(rng), s = sigma(rng);
    const double got = neg_log_likelihood(IarParams(p, s), TimeSeries(t, v));
    const double want = oracle::dense_gaussian_nll(p, s, t, v);
    EXPECT_NEAR(got, want, 1e-8 * std::abs(want)) << "instance " << inst;
  }
}

TEST(NegLogLikelihood, MeasurementErrorEntersInnovationVariances) {
  const std::vector<double> t = {0.0, 0.7, 2.0};
  const std::vector<double> y = {0.4, -1.1, 0.3};
  const std::vector<double> d = {0.1, 0.2, 0.05};
  const double phi = 0.6, sigma = 1.3;
  // Direct sum of Gaussian log-densities of the innovations.
  double want = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    double pred = 0.0, var = sigma * sigma + d[j];
    if (j > 0) {
      const double a = std::pow(phi, t[j] - t[j - 1]);
      pred = a * y[j - 1];
      var = sigma * sigma * (1 - a * a) + d[j];
    }
    want += 0.5 * std::log(2 * std::numbers::pi * var) +
            0.5 * (y[j] - pred) * (y[j] - pred) / var;
  }
  EXPECT_NEAR(neg_log_likelihood(IarParams(phi, sigma), TimeSeries(t, y, d)),
              want, 1e-12);
}

TEST(FittedValues, Conventions) {
  const TimeSeries s({0.0, 1.0, 3.0}, {1.0, 0.5, -0.2});
  const std::vector<double> path = {0.5, 0.5, 0.8};
  const OneStepFit f = fitted_values(path, 1.0, s);
  ASSERT_EQ(f.predictions.size(), 3u);
  EXPECT_EQ(f.predictions[0], 0.0);
  EXPECT_EQ(f.innovations[0], 1.0);
  EXPECT_DOUBLE_EQ(f.predictions[1], 0.5);
  EXPECT_DOUBLE_EQ(f.predictions[2], 0.64 * 0.5);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_DOUBLE_EQ(f.innovations[j], s.value(j) - f.predictions[j]);
    EXPECT_GT(f.innovation_vars[j], 0.0);
  }
  EXPECT_DOUBLE_EQ(f.innovation_vars[0], 1.0);
  EXPECT_DOUBLE_EQ(mean_squared_innovation(f, 1),
                   0.5 * (0.0 * 0.0 + std::pow(-0.2 - 0.32, 2)));
}

TEST(IarRecursion, NoiselessDecay) {
  const std::vector<double> t = {0.0, 0.5, 1.7, 4.0};
  const std::vector<double> path(4, 0.6);
  const std::vector<double> shocks = {1.5, 0.0, 0.0, 0.0};
  const auto y = iar_recursion(path, 2.0, t, shocks);
  for (std::size_t j = 0; j < t.size(); ++j) {
    EXPECT_NEAR(y[j], 3.0 * std::pow(0.6, t[j]), 1e-14);
  }
}

TEST(Simulate, DeterministicPerSeed) {
  const auto t = gen_times(UniformGaps{}, 200, 5);
  const IarParams p(0.7, 1.0);
  EXPECT_EQ(simulate(p, t, 11), simulate(p, t, 11));
  EXPECT_NE(simulate(p, t, 11), simulate(p, t, 12));
}

TEST(Simulate, ConstantPathReducesToSimulate) {
  const auto t = gen_times(GammaGaps{}, 150, 3);
  const std::vector<double> path(t.size(), 0.45);
  EXPECT_EQ(simulate_time_varying(path, 1.5, t, 9),
            simulate(IarParams(0.45, 1.5), t, 9));
}

TEST(Simulate, MeasurementNoiseIsAddedOnTop) {
  const auto t = gen_times(RegularGaps{}, 100, 1);
  const std::vector<double> d(t.size(), 0.25);
  const TimeSeries clean = simulate(IarParams(0.5, 1.0), t, 4);
  const TimeSeries noisy = simulate(IarParams(0.5, 1.0), t, 4, d);
  double sq = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sq += std::pow(noisy.value(i) - clean.value(i), 2);
    EXPECT_DOUBLE_EQ(noisy.err_var(i), 0.25);
  }
  EXPECT_NEAR(sq / 100.0, 0.25, 0.12);
}

TEST(Simulate, StationaryMomentsOnRegularTimes) {
  const auto t = gen_times(RegularGaps{}, 20000, 1);
  const TimeSeries s = simulate(IarParams(0.5, 2.0), t, 123);
  const std::vector<double> y(s.values().begin(), s.values().end());
  EXPECT_NEAR(sample_mean(y), 0.0, 0.05);
  EXPECT_NEAR(sample_sd(y) * sample_sd(y), 4.0, 0.25);
  double num = 0, den = 0;
  for (std::size_t i = 1; i < y.size(); ++i) num += y[i] * y[i - 1];
  for (double v : y) den += v * v;
  EXPECT_NEAR(num / den, 0.5, 0.03);
}

}  // namespace
}  // namespace iar
