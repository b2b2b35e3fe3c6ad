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

// Grid search for the online learning rates and the OBR prior. The score of
// a setting is the mean fitted MSE over the three scenarios with regular
// sampling; within one standard error of the best score the most adaptive
// setting wins (smallest eta, largest q). Seeds are disjoint from the ones
// used by the shipped configs.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iar/experiments.h"

namespace {

std::vector<iar::ExperimentConfig> scenario_configs(std::size_t reps,
                                                    std::uint64_t seed) {
  iar::ExperimentConfig sanity;
  sanity.scenario = iar::SanityCheck{0.5};
  sanity.warm_fraction = 0.5;

  iar::ExperimentConfig abrupt;
  abrupt.scenario = iar::AbruptChange{0.7, 0.3, 201};
  abrupt.warm_fraction = 0.625;

  iar::ExperimentConfig drift;
  drift.scenario = iar::ConstantChange{0.8, 0.4};
  drift.warm_fraction = 0.5;

  std::vector<iar::ExperimentConfig> out = {sanity, abrupt, drift};
  for (auto& c : out) {
    c.n = 400;
    c.reps = reps;
    c.base_seed = seed;
    c.gap_spec = iar::RegularGaps{1.0};
  }
  return out;
}

void report(const char* title, const iar::CalibrationResult& r,
            const std::vector<std::string>& labels) {
  std::printf("%s\n", title);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const char* mark = i == r.selected_index ? "  <- selected"
                       : i == r.best_index   ? "  (lowest)"
                                             : "";
    std::printf("  %-22s mse %.5f  se %.5f%s\n", labels[i].c_str(), r.mse[i],
                r.se[i], mark);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calibrate online estimator hyperparameters"};
  std::size_t reps = 100;
  std::uint64_t seed = 100001;
  app.add_option("--reps", reps, "Repetitions per scenario")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Base seed");
  CLI11_PARSE(app, argc, argv);

  const auto configs = scenario_configs(reps, seed);
  const std::vector<double> etas = {1, 5, 10, 50, 100, 500};
  const std::vector<double> p1s = {1.0, 0.1, 0.01};
  const std::vector<double> qs = {0.0, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2};

  std::vector<iar::OnlineHyper> ons, ogd, obr;
  std::vector<std::string> eta_labels, obr_labels;
  for (double eta : etas) {
    iar::OnlineHyper h;
    h.ons.eta = eta;
    h.ogd.eta = eta;
    ons.push_back(h);
    ogd.push_back(h);
    eta_labels.push_back("eta=" + std::to_string(eta));
  }
  for (double q : qs) {
    for (double p1 : p1s) {
      iar::OnlineHyper h;
      h.obr.p1 = p1;
      h.obr.q = q;
      obr.push_back(h);
      char buf[64];
      std::snprintf(buf, sizeof buf, "p1=%g q=%g", p1, q);
      obr_labels.emplace_back(buf);
    }
  }

  const auto r_ons =
      iar::calibrate(iar::OnlineMethod::kOns, ons, configs,
                     [](const iar::OnlineHyper& h) { return -h.ons.eta; });
  report("ONS", r_ons, eta_labels);
  const auto r_ogd =
      iar::calibrate(iar::OnlineMethod::kOgd, ogd, configs,
                     [](const iar::OnlineHyper& h) { return -h.ogd.eta; });
  report("OGD", r_ogd, eta_labels);
  const auto r_obr =
      iar::calibrate(iar::OnlineMethod::kObr, obr, configs,
                     [](const iar::OnlineHyper& h) { return h.obr.q; });
  report("OBR", r_obr, obr_labels);

  const auto& s_obr = obr[r_obr.selected_index].obr;
  std::printf("\nselected: ons.eta=%g ogd.eta=%g obr.p1=%g obr.q=%g\n",
              ons[r_ons.selected_index].ons.eta,
              ogd[r_ogd.selected_index].ogd.eta, s_obr.p1, s_obr.q);
  return 0;
}
