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

#ifndef IAR_MODEL_H_
#define IAR_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iar/time_series.h"

namespace iar {

// The irregular autoregressive process
//
//   y(t_j) = phi^(t_j - t_{j-1}) y(t_{j-1})
//            + sigma sqrt(1 - phi^(2 (t_j - t_{j-1}))) eps(t_j),
//
// with eps i.i.d. standard normal and 0 < phi < 1. The process is stationary
// with marginal variance sigma^2 and autocovariance sigma^2 phi^|t - s|.

// phi^exponent evaluated as exp(exponent * log(phi)).
double phi_power(double phi, double exponent);

// One-step predictor phi^gap * y_prev.
double predict_one(double phi, double y_prev, double gap);

// Conditional variance of the next observation:
// sigma^2 (1 - phi^(2 gap)) + delta2.
double innovation_variance(double phi, double sigma, double gap,
                           double delta2);

struct OneStepFit {
  std::vector<double> predictions;
  std::vector<double> innovations;
  std::vector<double> innovation_vars;
};

// Exact Gaussian negative log-likelihood computed from the one-step
// innovations. The first innovation is y(t_1) with variance
// sigma^2 + delta^2(t_1).
double neg_log_likelihood(const IarParams& params, const TimeSeries& series);

// Predictions, innovations and innovation variances when step j (j >= 1)
// uses phi_path[j]. The first prediction is the unconditional mean 0.
// phi_path[0] only enters innovation_vars[0] through sigma, so any value in
// (0, 1) is accepted there.
OneStepFit fitted_values(std::span<const double> phi_path, double sigma,
                         const TimeSeries& series);

// Mean of innovations[j]^2 for j in [from, n).
double mean_squared_innovation(const OneStepFit& fit, std::size_t from);

// The latent recursion driven by explicit standardized shocks:
// y_0 = sigma * shocks[0] and
// y_j = phi_j^gap y_{j-1} + sigma sqrt(1 - phi_j^(2 gap)) shocks[j].
std::vector<double> iar_recursion(std::span<const double> phi_path,
                                  double sigma, std::span<const double> times,
                                  std::span<const double> shocks);

// Draws a series at the given times. y(t_1) comes from the stationary
// marginal N(0, sigma^2); if meas_err_var is given, independent
// N(0, delta^2_j) noise is added to each observation (the latent recursion
// stays noise free). Deterministic for a fixed seed.
TimeSeries simulate(const IarParams& params, std::span<const double> times,
                    std::uint64_t seed,
                    std::optional<std::span<const double>> meas_err_var = {});

// As simulate(), but step j (j >= 1) uses phi_path[j]. A constant path
// reproduces simulate() exactly for the same seed.
TimeSeries simulate_time_varying(
    std::span<const double> phi_path, double sigma,
    std::span<const double> times, std::uint64_t seed,
    std::optional<std::span<const double>> meas_err_var = {});

}  // namespace iar

#endif  // IAR_MODEL_H_
