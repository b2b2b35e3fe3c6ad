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

#ifndef IAR_BATCH_MLE_H_
#define IAR_BATCH_MLE_H_

#include <functional>
#include <optional>

#include "iar/time_series.h"

namespace iar {

struct BoundedMinimum {
  double x;
  double fx;
  int iterations;
  bool converged;
};

// Brent's golden-section / parabolic minimizer on [lo, hi]. Stops once the
// bracket half-width is within `abs_tol` of the current abscissa.
BoundedMinimum minimize_bounded(const std::function<double(double)>& f,
                                double lo, double hi, double abs_tol,
                                int max_iterations);

struct MleOptions {
  // Process standard deviation used in the likelihood. Empty means the
  // sample standard deviation of the values.
  std::optional<double> sigma;
  double abs_tol = 1e-6;
  int max_iterations = 200;
  // Coarse scan used to pick the bracket handed to Brent, guarding against
  // multimodal objectives.
  int scan_points = 16;
};

struct MleResult {
  double phi_hat;
  double nll;
  int iterations;
  bool converged;
  double sigma;
};

// Maximum-likelihood estimate of phi over [kPhiMin, kPhiMax] with sigma held
// fixed. Requires at least two observations; hitting the iteration cap is
// reported through `converged`, not thrown.
MleResult fit_mle(const TimeSeries& series, const MleOptions& options = {});

}  // namespace iar

#endif  // IAR_BATCH_MLE_H_
