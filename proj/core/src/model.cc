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

#include "iar/model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "rng.h"

namespace iar {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_phi(double phi) {
  require_finite(phi, "phi");
  if (!(phi > 0.0 && phi < 1.0)) {
    throw std::invalid_argument("phi must lie in (0, 1), got " +
                                std::to_string(phi));
  }
}

void require_gap(double gap) {
  require_finite(gap, "gap");
  if (!(gap > 0.0)) {
    throw std::invalid_argument("gap must be positive, got " +
                                std::to_string(gap));
  }
}

void require_increasing(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    require_finite(times[i], "time");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("times must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
  }
}

// 1 - phi^(2 gap) without cancellation for small gaps.
double one_minus_phi_pow2(double log_phi, double gap) {
  return -std::expm1(2.0 * gap * log_phi);
}

}  // namespace

double clamp_phi(double phi) { return std::clamp(phi, kPhiMin, kPhiMax); }

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values)
    : TimeSeries(times, std::move(values),
                 std::vector<double>(times.size(), 0.0)) {}

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values,
                       std::vector<double> meas_err_var)
    : times_(std::move(times)),
      values_(std::move(values)),
      meas_err_var_(std::move(meas_err_var)) {
  if (values_.empty()) {
    throw std::invalid_argument("TimeSeries: series must be non-empty");
  }
  if (times_.size() != values_.size() ||
      meas_err_var_.size() != values_.size()) {
    throw std::invalid_argument("TimeSeries: length mismatch");
  }
  require_increasing(times_);
  for (double v : values_) require_finite(v, "value");
  for (double d : meas_err_var_) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument(
          "TimeSeries: measurement-error variances must be finite and >= 0");
    }
  }
}

TimeSeries TimeSeries::head(std::size_t count) const {
  if (count == 0 || count > size()) {
    throw std::invalid_argument("TimeSeries::head: count out of range");
  }
  const auto n = static_cast<std::ptrdiff_t>(count);
  return TimeSeries({times_.begin(), times_.begin() + n},
                    {values_.begin(), values_.begin() + n},
                    {meas_err_var_.begin(), meas_err_var_.begin() + n});
}

IarParams::IarParams(double phi, double sigma) {
  require_phi(phi);
  require_finite(sigma, "sigma");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  phi_ = clamp_phi(phi);
  sigma_ = sigma;
}

double phi_power(double phi, double exponent) {
  return std::exp(exponent * std::log(phi));
}

double predict_one(double phi, double y_prev, double gap) {
  require_phi(phi);
  require_finite(y_prev, "y_prev");
  require_gap(gap);
  return phi_power(phi, gap) * y_prev;
}

double innovation_variance(double phi, double sigma, double gap,
                           double delta2) {
  require_phi(phi);
  require_gap(gap);
  require_finite(sigma, "sigma");
  require_finite(delta2, "delta2");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (delta2 < 0.0) throw std::invalid_argument("delta2 must be >= 0");
  return sigma * sigma * one_minus_phi_pow2(std::log(phi), gap) + delta2;
}

double neg_log_likelihood(const IarParams& params, const TimeSeries& series) {
  const double log_phi = std::log(params.phi());
  const double s2 = params.sigma() * params.sigma();
  const auto y = series.values();
  const auto t = series.times();
  const auto d2 = series.meas_err_var();

  double v = s2 + d2[0];
  double sum_log_v = std::log(v);
  double sum_e2_v = y[0] * y[0] / v;
  for (std::size_t j = 1; j < y.size(); ++j) {
    const double gap = t[j] - t[j - 1];
    const double e = y[j] - std::exp(gap * log_phi) * y[j - 1];
    v = s2 * one_minus_phi_pow2(log_phi, gap) + d2[j];
    sum_log_v += std::log(v);
    sum_e2_v += e * e / v;
  }
  const auto n = static_cast<double>(y.size());
  return 0.5 * n * std::log(2.0 * std::numbers::pi) + 0.5 * sum_log_v +
         0.5 * sum_e2_v;
}

OneStepFit fitted_values(std::span<const double> phi_path, double sigma,
                         const TimeSeries& series) {
  const std::size_t n = series.size();
  if (phi_path.size() != n) {
    throw std::invalid_argument("fitted_values: phi_path has length " +
                                std::to_string(phi_path.size()) +
                                ", series has " + std::to_string(n));
  }
  require_finite(sigma, "sigma");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

  OneStepFit fit;
  fit.predictions.resize(n);
  fit.innovations.resize(n);
  fit.innovation_vars.resize(n);
  const double s2 = sigma * sigma;
  fit.predictions[0] = 0.0;
  fit.innovations[0] = series.value(0);
  fit.innovation_vars[0] = s2 + series.err_var(0);
  for (std::size_t j = 1; j < n; ++j) {
    require_phi(phi_path[j]);
    const double log_phi = std::log(phi_path[j]);
    const double gap = series.gap(j);
    fit.predictions[j] = std::exp(gap * log_phi) * series.value(j - 1);
    fit.innovations[j] = series.value(j) - fit.predictions[j];
    fit.innovation_vars[j] =
        s2 * one_minus_phi_pow2(log_phi, gap) + series.err_var(j);
  }
  return fit;
}

double mean_squared_innovation(const OneStepFit& fit, std::size_t from) {
  const std::size_t n = fit.innovations.size();
  if (from >= n) {
    throw std::invalid_argument("mean_squared_innovation: empty segment");
  }
  double sum = 0.0;
  for (std::size_t j = from; j < n; ++j) {
    sum += fit.innovations[j] * fit.innovations[j];
  }
  return sum / static_cast<double>(n - from);
}

std::vector<double> iar_recursion(std::span<const double> phi_path,
                                  double sigma, std::span<const double> times,
                                  std::span<const double> shocks) {
  const std::size_t n = times.size();
  if (n == 0) throw std::invalid_argument("iar_recursion: no times");
  if (phi_path.size() != n || shocks.size() != n) {
    throw std::invalid_argument(
        "iar_recursion: phi_path, times and shocks must have equal length");
  }
  require_finite(sigma, "sigma");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  require_increasing(times);
  for (std::size_t j = 1; j < n; ++j) require_phi(phi_path[j]);

  std::vector<double> y(n);
  y[0] = sigma * shocks[0];
  for (std::size_t j = 1; j < n; ++j) {
    const double log_phi = std::log(clamp_phi(phi_path[j]));
    const double gap = times[j] - times[j - 1];
    const double decay = std::exp(gap * log_phi);
    y[j] = decay * y[j - 1] +
           sigma * std::sqrt(one_minus_phi_pow2(log_phi, gap)) * shocks[j];
  }
  return y;
}

TimeSeries simulate_time_varying(
    std::span<const double> phi_path, double sigma,
    std::span<const double> times, std::uint64_t seed,
    std::optional<std::span<const double>> meas_err_var) {
  const std::size_t n = times.size();
  if (phi_path.size() != n) {
    throw std::invalid_argument("simulate: phi_path has length " +
                                std::to_string(phi_path.size()) +
                                ", times has " + std::to_string(n));
  }
  if (meas_err_var && meas_err_var->size() != n) {
    throw std::invalid_argument("simulate: meas_err_var length mismatch");
  }
  require_increasing(times);

  auto engine = internal::make_engine(seed, internal::Stream::kValues);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> shocks(n);
  for (double& z : shocks) z = normal(engine);

  std::vector<double> y = iar_recursion(phi_path, sigma, times, shocks);
  std::vector<double> d2(n, 0.0);
  if (meas_err_var) {
    auto noise_engine =
        internal::make_engine(seed, internal::Stream::kMeasurementNoise);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      d2[j] = (*meas_err_var)[j];
      if (!(d2[j] >= 0.0)) {
        throw std::invalid_argument("simulate: meas_err_var must be >= 0");
      }
      y[j] += std::sqrt(d2[j]) * noise(noise_engine);
    }
  }
  return TimeSeries({times.begin(), times.end()}, std::move(y), std::move(d2));
}

TimeSeries simulate(const IarParams& params, std::span<const double> times,
                    std::uint64_t seed,
                    std::optional<std::span<const double>> meas_err_var) {
  const std::vector<double> path(times.size(), params.phi());
  return simulate_time_varying(path, params.sigma(), times, seed,
                               meas_err_var);
}

}  // namespace iar
