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

#ifndef IAR_TIME_SERIES_H_
#define IAR_TIME_SERIES_H_

#include <cstddef>
#include <span>
#include <vector>

namespace iar {

// Every estimate of the autocorrelation parameter is kept inside this closed
// interval so that log(phi) and phi^(gap - 1) stay finite.
inline constexpr double kPhiMin = 1e-5;
inline constexpr double kPhiMax = 1.0 - 1e-5;

double clamp_phi(double phi);

// An irregularly observed series y(t_1), ..., y(t_n).
//
// Indexing is zero based: values()[0] is the observation at the first time.
// Construction validates that times are strictly increasing, that all three
// sequences have the same non-zero length and that the measurement-error
// variances are non-negative; violations throw std::invalid_argument.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> times, std::vector<double> values);
  TimeSeries(std::vector<double> times, std::vector<double> values,
             std::vector<double> meas_err_var);

  std::size_t size() const { return values_.size(); }

  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> meas_err_var() const { return meas_err_var_; }

  double time(std::size_t i) const { return times_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  double err_var(std::size_t i) const { return meas_err_var_[i]; }

  // t_i - t_{i-1}; requires i >= 1.
  double gap(std::size_t i) const { return times_[i] - times_[i - 1]; }

  // The first `count` observations.
  TimeSeries head(std::size_t count) const;

  bool operator==(const TimeSeries&) const = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> meas_err_var_;
};

// Parameters of the irregular AR(1) process. Constructing with phi outside
// (0, 1) or a non-positive sigma throws std::invalid_argument; phi is then
// clamped into [kPhiMin, kPhiMax].
class IarParams {
 public:
  IarParams(double phi, double sigma);

  double phi() const { return phi_; }
  double sigma() const { return sigma_; }

 private:
  double phi_;
  double sigma_;
};

}  // namespace iar

#endif  // IAR_TIME_SERIES_H_
