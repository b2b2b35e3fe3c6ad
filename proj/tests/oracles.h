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

// Reference computations used only by the tests. They are deliberately
// written from textbook definitions rather than shared with the library.

#ifndef IAR_TESTS_ORACLES_H_
#define IAR_TESTS_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace iar::oracle {

// Negative log of the joint Gaussian density of y with covariance
// C_ij = sigma^2 phi^|t_i - t_j| (plus delta2_i on the diagonal), via a
// dense Cholesky factorization.
inline double dense_gaussian_nll(double phi, double sigma,
                                 const std::vector<double>& t,
                                 const std::vector<double>& y,
                                 const std::vector<double>& delta2 = {}) {
  const std::size_t n = y.size();
  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c[i * n + j] = sigma * sigma * std::pow(phi, std::abs(t[i] - t[j]));
    }
    if (!delta2.empty()) c[i * n + i] += delta2[i];
  }
  // In-place lower Cholesky.
  for (std::size_t j = 0; j < n; ++j) {
    double d = c[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= c[j * n + k] * c[j * n + k];
    if (d <= 0) throw std::runtime_error("covariance not positive definite");
    const double l = std::sqrt(d);
    c[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = c[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= c[i * n + k] * c[j * n + k];
      c[i * n + j] = s / l;
    }
  }
  // Forward substitution L z = y; quadratic form is |z|^2.
  std::vector<double> z(n);
  double quad = 0.0, logdet = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = y[i];
    for (std::size_t k = 0; k < i; ++k) s -= c[i * n + k] * z[k];
    z[i] = s / c[i * n + i];
    quad += z[i] * z[i];
    logdet += 2.0 * std::log(c[i * n + i]);
  }
  return 0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) +
                logdet + quad);
}

// Argmin of f over `points` equally spaced abscissae spanning [lo, hi].
inline double grid_argmin(const std::function<double(double)>& f, double lo,
                          double hi, std::size_t points = 10001) {
  double best_x = lo;
  double best_f = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double x =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double fx = f(x);
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return best_x;
}

inline double central_difference(const std::function<double(double)>& f,
                                  double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Central difference of the squared one-step error in phi, evaluated in
// extended precision so that cancellation does not swamp small gradients.
inline double loss_central_difference(double phi, double y_prev, double y,
                                      double gap, double h) {
  auto loss = [&](long double p) {
    const long double r =
        static_cast<long double>(y) -
        std::pow(p, static_cast<long double>(gap)) * y_prev;
    return r * r;
  };
  const long double lp = loss(static_cast<long double>(phi) + h);
  const long double lm = loss(static_cast<long double>(phi) - h);
  return static_cast<double>((lp - lm) / (2.0L * h));
}

// Textbook scalar Kalman filter for the static-coefficient regression
// y_j = beta x_j + noise, noise variance r(beta) evaluated at the prior
// mean, with random-walk variance q on beta.
struct ScalarKalman {
  double beta;
  double p;
  double q = 0.0;

  void step(double x, double y, double r) {
    const double p_prior = p + q;
    const double s = x * p_prior * x + r;
    const double gain = p_prior * x / s;
    beta = beta + gain * (y - x * beta);
    p = (1.0 - gain * x) * p_prior;
  }
};

struct Line {
  double intercept;
  double slope;
};

// Ordinary least squares through (x, y).
inline Line ols_line(const std::vector<double>& x,
                     const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

// Mean over j in [from, n) of (y_j - est_j^(t_j - t_{j-1}) y_{j-1})^2, where
// est_j is the estimate in hand before y_j arrives, i.e. the estimate after
// step j - 1 of the trajectory.
inline double naive_predictive_mse(const std::vector<double>& t,
                                   const std::vector<double>& y,
                                   const std::vector<double>& trajectory,
                                   std::size_t from) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t j = from; j < y.size(); ++j) {
    const double phi = trajectory[j - 1];
    const double pred = std::pow(phi, t[j] - t[j - 1]) * y[j - 1];
    total += (y[j] - pred) * (y[j] - pred);
    ++count;
  }
  return total / static_cast<double>(count);
}

}  // namespace iar::oracle

#endif  // IAR_TESTS_ORACLES_H_
