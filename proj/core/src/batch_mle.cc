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

#include "iar/batch_mle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "iar/errors.h"
#include "iar/model.h"
#include "iar/stats.h"

namespace iar {

BoundedMinimum minimize_bounded(const std::function<double(double)>& f,
                                double lo, double hi, double abs_tol,
                                int max_iterations) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_bounded: need lo < hi");
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("minimize_bounded: abs_tol must be positive");
  }
  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  const double rel_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  double a = lo;
  double b = hi;
  double x = a + golden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;

  for (int iter = 1; iter <= max_iterations; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = rel_eps * std::abs(x) + abs_tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) {
      return {x, fx, iter - 1, true};
    }

    bool golden_step = true;
    if (std::abs(e) > tol1) {
      // Parabola through (v, fv), (w, fw), (x, fx).
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < mid ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x < mid ? b : a) - x;
      d = golden * e;
    }

    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, max_iterations, false};
}

MleResult fit_mle(const TimeSeries& series, const MleOptions& options) {
  if (series.size() < 2) {
    throw std::invalid_argument("fit_mle: need at least two observations");
  }
  double sigma = 0.0;
  if (options.sigma) {
    sigma = *options.sigma;
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw std::invalid_argument("fit_mle: sigma must be positive");
    }
  } else {
    sigma = sample_sd(series.values());
    if (!(sigma > 0.0)) {
      throw DegenerateDataError("fit_mle: series has zero sample variance");
    }
  }
  if (options.scan_points < 2) {
    throw std::invalid_argument("fit_mle: scan_points must be >= 2");
  }

  auto objective = [&](double phi) {
    return neg_log_likelihood(IarParams(clamp_phi(phi), sigma), series);
  };

  // Coarse scan including both endpoints, then Brent inside the best cell.
  const int k = options.scan_points;
  const double step = (kPhiMax - kPhiMin) / (k - 1);
  std::vector<double> grid(k);
  int best = 0;
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    grid[i] = i == k - 1 ? kPhiMax : kPhiMin + i * step;
    const double f = objective(grid[i]);
    if (f < best_f) {
      best_f = f;
      best = i;
    }
  }
  const double lo = grid[std::max(best - 1, 0)];
  const double hi = grid[std::min(best + 1, k - 1)];
  const BoundedMinimum m = minimize_bounded(objective, lo, hi, options.abs_tol,
                                            options.max_iterations);
  if (m.fx <= best_f) {
    return {clamp_phi(m.x), m.fx, m.iterations, m.converged, sigma};
  }
  return {grid[best], best_f, m.iterations, m.converged, sigma};
}

}  // namespace iar
