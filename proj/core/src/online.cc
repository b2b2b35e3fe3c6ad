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

#include "iar/online.h"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace iar {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_step_inputs(double phi, double y_prev, double y, double gap) {
  if (!std::isfinite(phi) || !std::isfinite(y_prev) || !std::isfinite(y) ||
      !std::isfinite(gap)) {
    throw std::invalid_argument("online step: inputs must be finite");
  }
  if (!(phi > 0.0 && phi < 1.0)) {
    throw std::invalid_argument("online step: phi must lie in (0, 1)");
  }
  if (!(gap > 0.0)) {
    throw std::invalid_argument("online step: gap must be positive");
  }
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be positive");
  }
}

}  // namespace

std::string_view to_string(OnlineMethod method) {
  switch (method) {
    case OnlineMethod::kOns:
      return "ONS";
    case OnlineMethod::kOgd:
      return "OGD";
    case OnlineMethod::kObr:
      return "OBR";
  }
  return "?";
}

OnlineMethod parse_online_method(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "ons") return OnlineMethod::kOns;
  if (lower == "ogd") return OnlineMethod::kOgd;
  if (lower == "obr") return OnlineMethod::kObr;
  throw std::invalid_argument("unknown online method '" + std::string(name) +
                              "' (expected obr, ogd or ons)");
}

LossGradient loss_and_gradient(double phi, double y_prev, double y,
                               double gap) {
  require_step_inputs(phi, y_prev, y, gap);
  const double log_phi = std::log(phi);
  const double residual = y - std::exp(gap * log_phi) * y_prev;
  const double grad =
      -2.0 * residual * y_prev * gap * std::exp((gap - 1.0) * log_phi);
  return {residual * residual, grad};
}

OnsState OnsState::initial(double phi, double eta) {
  require_positive(eta, "ONS eta");
  return {clamp_phi(phi), eta, eta};
}

OgdState OgdState::initial(double phi, double eta) {
  require_positive(eta, "OGD eta");
  return {clamp_phi(phi), eta};
}

ObrState ObrState::initial(double phi, double p, double sigma, double q) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("OBR p1 must be >= 0");
  }
  require_positive(sigma, "OBR sigma");
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw std::invalid_argument("OBR q must be >= 0");
  }
  return {clamp_phi(phi), p, sigma, q};
}

OnsState ons_step(const OnsState& state, double y_prev, double y, double gap) {
  const auto [loss, grad] = loss_and_gradient(state.phi, y_prev, y, gap);
  OnsState next = state;
  next.a = state.a + grad * grad;
  next.phi = clamp_phi(state.phi - grad / (state.eta * next.a));
  return next;
}

OgdState ogd_step(const OgdState& state, double y_prev, double y, double gap) {
  const auto [loss, grad] = loss_and_gradient(state.phi, y_prev, y, gap);
  OgdState next = state;
  next.phi = clamp_phi(state.phi - grad / state.eta);
  return next;
}

ObrState obr_step(const ObrState& state, double y_prev, double y, double gap) {
  require_step_inputs(state.phi, y_prev, y, gap);
  const double p = state.p + state.q;
  const double log_phi = std::log(state.phi);
  const double noise =
      state.sigma * state.sigma * -std::expm1(2.0 * gap * log_phi);
  const double s = y_prev * p * y_prev + noise;
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::logic_error("OBR: innovation variance S is not positive");
  }
  const double k = p * y_prev / s;
  ObrState next = state;
  next.phi =
      clamp_phi(state.phi + k * (y - y_prev * std::exp(gap * log_phi)));
  // p - k s k, written as p * noise / s so rounding cannot make it negative.
  next.p = p * noise / s;
  return next;
}

OnlineEstimator::OnlineEstimator(OnlineMethod method, double phi_init,
                                 const OnlineHyper& hyper) {
  if (!(phi_init > 0.0 && phi_init < 1.0)) {
    throw std::invalid_argument("phi_init must lie in (0, 1)");
  }
  switch (method) {
    case OnlineMethod::kOns:
      state_ = OnsState::initial(phi_init, hyper.ons.eta);
      break;
    case OnlineMethod::kOgd:
      state_ = OgdState::initial(phi_init, hyper.ogd.eta);
      break;
    case OnlineMethod::kObr:
      state_ = ObrState::initial(phi_init, hyper.obr.p1, hyper.obr.sigma,
                                 hyper.obr.q);
      break;
  }
}

OnlineMethod OnlineEstimator::method() const {
  return std::visit(
      Overloaded{[](const OnsState&) { return OnlineMethod::kOns; },
                 [](const OgdState&) { return OnlineMethod::kOgd; },
                 [](const ObrState&) { return OnlineMethod::kObr; }},
      state_);
}

double OnlineEstimator::phi() const {
  return std::visit([](const auto& s) { return s.phi; }, state_);
}

void OnlineEstimator::update(double y_prev, double y, double gap) {
  std::visit(Overloaded{
                 [&](OnsState& s) { s = ons_step(s, y_prev, y, gap); },
                 [&](OgdState& s) { s = ogd_step(s, y_prev, y, gap); },
                 [&](ObrState& s) { s = obr_step(s, y_prev, y, gap); },
             },
             state_);
}

void OnlineEstimator::observe(double time, double value) {
  if (last_time_) {
    if (!(time > *last_time_)) {
      throw std::invalid_argument("observe: times must be strictly increasing");
    }
    update(last_value_, value, time - *last_time_);
  }
  last_time_ = time;
  last_value_ = value;
}

std::vector<double> run_online(OnlineMethod method, const TimeSeries& series,
                               double phi_init, std::size_t start,
                               const OnlineHyper& hyper) {
  const std::size_t n = series.size();
  if (start < 1 || start >= n) {
    throw std::invalid_argument("run_online: start index " +
                                std::to_string(start) +
                                " outside [1, n - 1] for n = " +
                                std::to_string(n));
  }
  OnlineEstimator estimator(method, phi_init, hyper);
  std::vector<double> trajectory(n, estimator.phi());
  estimator.observe(series.time(start - 1), series.value(start - 1));
  for (std::size_t j = start; j < n; ++j) {
    estimator.observe(series.time(j), series.value(j));
    trajectory[j] = estimator.phi();
  }
  return trajectory;
}

std::vector<double> predictive_path(const std::vector<double>& trajectory) {
  if (trajectory.empty()) return {};
  std::vector<double> path(trajectory.size());
  path[0] = trajectory[0];
  for (std::size_t j = 1; j < trajectory.size(); ++j) {
    path[j] = trajectory[j - 1];
  }
  return path;
}

}  // namespace iar
