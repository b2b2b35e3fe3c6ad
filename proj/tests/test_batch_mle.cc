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
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "iar/batch_mle.h"
#include "iar/errors.h"
#include "iar/model.h"
#include "iar/sampling.h"
#include "oracles.h"

namespace iar {
namespace {

TEST(MinimizeBounded, InteriorQuadratic) {
  const auto m = minimize_bounded(
      [](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, 0.0, 1.0, 1e-8,
      200);
  EXPECT_TRUE(m.converged);
  EXPECT_NEAR(m.x, 0.3, 1e-7);
  EXPECT_NEAR(m.fx, 2.0, 1e-12);
}

TEST(MinimizeBounded, NonSmoothAndBoundaryMinima) {
  const auto a = minimize_bounded([](double x) { return std::abs(x - 0.71); },
                                  0.0, 1.0, 1e-7, 200);
  EXPECT_NEAR(a.x, 0.71, 1e-6);
  const auto b = minimize_bounded([](double x) { return x; }, 0.2, 0.9, 1e-7,
                                  200);
  EXPECT_NEAR(b.x, 0.2, 1e-6);
}

TEST(MinimizeBounded, ReportsIterationCap) {
  const auto m = minimize_bounded([](double x) { return std::cos(3 * x); },
                                  0.0, 2.0, 1e-12, 3);
  EXPECT_FALSE(m.converged);
  EXPECT_EQ(m.iterations, 3);
}

TEST(MinimizeBounded, RejectsEmptyInterval) {
  EXPECT_THROW(minimize_bounded([](double x) { return x; }, 1.0, 0.0, 1e-6,
                                10),
               std::invalid_argument);
}

TEST(FitMle, AgreesWithDenseGridSearch) {
  const TimeGapSpec specs[] = {RegularGaps{}, UniformGaps{}, GammaGaps{},
                               ExpMixtureGaps{}};
  int checked = 0;
  for (int k = 0; k < 20; ++k) {
    const TimeGapSpec& spec = specs[k % 4];
    const double phi = 0.1 + 0.04 * k;
    const auto t = gen_times(spec, 150, 1000 + k);
    const TimeSeries s = simulate(IarParams(phi, 1.0), t, 2000 + k);
    const MleResult r = fit_mle(s);
    const double grid = oracle::grid_argmin(
        [&](double p) {
          return neg_log_likelihood(IarParams(clamp_phi(p), r.sigma), s);
        },
        kPhiMin, kPhiMax);
    EXPECT_NEAR(r.phi_hat, grid, 2e-4) << "series " << k;
    EXPECT_TRUE(r.converged);
    ++checked;
  }
  EXPECT_EQ(checked, 20);
}

TEST(FitMle, RecoversTruthOnLongSeries) {
  const auto t = gen_times(UniformGaps{}, 5000, 8);
  const MleResult r = fit_mle(simulate(IarParams(0.6, 1.0), t, 9));
  EXPECT_NEAR(r.phi_hat, 0.6, 0.03);
}

TEST(FitMle, FixedSigmaIsUsed) {
  const auto t = gen_times(RegularGaps{}, 300, 1);
  const TimeSeries s = simulate(IarParams(0.5, 2.0), t, 2);
  MleOptions opt;
  opt.sigma = 2.0;
  const MleResult r = fit_mle(s, opt);
  EXPECT_EQ(r.sigma, 2.0);
  EXPECT_NEAR(r.nll, neg_log_likelihood(IarParams(r.phi_hat, 2.0), s), 1e-9);
}

TEST(FitMle, Errors) {
  EXPECT_THROW(fit_mle(TimeSeries({0.0}, {1.0})), std::invalid_argument);
  EXPECT_THROW(fit_mle(TimeSeries({0, 1, 2}, {3, 3, 3})), DegenerateDataError);
  MleOptions opt;
  opt.sigma = -1.0;
  EXPECT_THROW(fit_mle(TimeSeries({0, 1, 2}, {1, 2, 3}), opt),
               std::invalid_argument);
}

}  // namespace
}  // namespace iar
