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

#ifndef IAR_ONLINE_H_
#define IAR_ONLINE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iar/time_series.h"

namespace iar {

// Streaming estimators of phi. Every estimator predicts y(t_j) with its
// current estimate, observes y(t_j), then updates; estimates are clamped to
// [kPhiMin, kPhiMax] after every step.
//
// Learning rates follow the update phi <- phi - (1 / eta) * step, so a LARGER
// eta means a SMALLER step. This is the reverse of the usual convention.

enum class OnlineMethod { kOns, kOgd, kObr };

std::string_view to_string(OnlineMethod method);
// Accepts "ons", "ogd", "obr" in any case; throws std::invalid_argument.
OnlineMethod parse_online_method(std::string_view name);

struct LossGradient {
  double loss;
  double grad;
};

// Squared one-step error (y - phi^gap y_prev)^2 and its derivative in phi,
// -2 (y - phi^gap y_prev) y_prev gap phi^(gap - 1).
LossGradient loss_and_gradient(double phi, double y_prev, double y,
                               double gap);

// Online Newton step. `a` accumulates squared gradients starting from eta.
struct OnsState {
  double phi;
  double a;
  double eta;

  static OnsState initial(double phi, double eta);
};

struct OgdState {
  double phi;
  double eta;

  static OgdState initial(double phi, double eta);
};

// Online Bayesian regression: Gaussian posterior N(phi, p) over the
// parameter, updated by a scalar Kalman recursion whose observation noise is
// the innovation variance sigma^2 (1 - phi^(2 gap)). `q` is an optional
// random-walk variance added to p before each update.
struct ObrState {
  double phi;
  double p;
  double sigma;
  double q = 0.0;

  static ObrState initial(double phi, double p, double sigma, double q = 0.0);
};

OnsState ons_step(const OnsState& state, double y_prev, double y, double gap);
OgdState ogd_step(const OgdState& state, double y_prev, double y, double gap);
// Throws std::logic_error if the innovation variance S is not positive.
ObrState obr_step(const ObrState& state, double y_prev, double y, double gap);

// Defaults come from tools/iar_calibrate (see README). P1 and q differ from
// the verbatim recursion (P1 = 1, q = 0), which tracks drifting parameters
// poorly.
struct OnsHyper {
  double eta = 1.0;
};
struct OgdHyper {
  double eta = 50.0;
};
struct ObrHyper {
  double p1 = 0.01;
  double sigma = 1.0;
  double q = 1e-3;
};

struct OnlineHyper {
  OnsHyper ons;
  OgdHyper ogd;
  ObrHyper obr;
};

// A single-step estimator over one of the three states. It only retains the
// previous observation, so memory is independent of the stream length.
class OnlineEstimator {
 public:
  OnlineEstimator(OnlineMethod method, double phi_init,
                  const OnlineHyper& hyper = {});

  OnlineMethod method() const;
  double phi() const;

  // The first call only records the observation; later calls predict,
  // observe and update. Times must be strictly increasing.
  void observe(double time, double value);

  // Consumes one transition directly.
  void update(double y_prev, double y, double gap);

  const std::variant<OnsState, OgdState, ObrState>& state() const {
    return state_;
  }

 private:
  std::variant<OnsState, OgdState, ObrState> state_;
  std::optional<double> last_time_;
  double last_value_ = 0.0;
};

// Runs an estimator over series[start, n). Entry i of the result is the
// estimate after observation i has been consumed; entries before `start`
// hold phi_init. Step i consumes (y[i-1], y[i], t[i] - t[i-1]) exactly once.
// Requires 1 <= start <= n - 1 (zero based).
std::vector<double> run_online(OnlineMethod method, const TimeSeries& series,
                               double phi_init, std::size_t start,
                               const OnlineHyper& hyper = {});

// Shifts a trajectory so that entry j is the estimate available before
// observing y[j], which is what the one-step prediction of y[j] uses.
std::vector<double> predictive_path(const std::vector<double>& trajectory);

}  // namespace iar

#endif  // IAR_ONLINE_H_
