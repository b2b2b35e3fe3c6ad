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

#include "iar/experiment_io.h"

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace iar {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string num(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

// Gap labels and specs contain commas.
std::string quoted(const std::string& field) { return '"' + field + '"'; }

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw std::invalid_argument("'" + where + "' must be a JSON object");
  }
  return j;
}

double get_number(const json& object, const std::string& key,
                  const std::string& where, double fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number()) {
    throw std::invalid_argument("'" + where + "." + key + "' must be a number");
  }
  return v.get<double>();
}

std::size_t get_count(const json& object, const std::string& key,
                      std::size_t fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw std::invalid_argument("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Scenario parse_scenario(const json& j) {
  require_object(j, "scenario");
  if (!j.contains("type") || !j.at("type").is_string()) {
    throw std::invalid_argument("'scenario.type' must be a string");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "sanity_check") {
    reject_unknown(j, {"type", "phi"}, "scenario");
    SanityCheck s;
    s.phi = get_number(j, "phi", "scenario", s.phi);
    return s;
  }
  if (type == "abrupt_change") {
    reject_unknown(j, {"type", "phi_a", "phi_b", "change_index"}, "scenario");
    AbruptChange s;
    s.phi_a = get_number(j, "phi_a", "scenario", s.phi_a);
    s.phi_b = get_number(j, "phi_b", "scenario", s.phi_b);
    s.change_index = get_count(j, "change_index", s.change_index);
    return s;
  }
  if (type == "constant_change") {
    reject_unknown(j, {"type", "phi_start", "phi_end"}, "scenario");
    ConstantChange s;
    s.phi_start = get_number(j, "phi_start", "scenario", s.phi_start);
    s.phi_end = get_number(j, "phi_end", "scenario", s.phi_end);
    return s;
  }
  throw std::invalid_argument("unknown scenario type '" + type + "'");
}

json scenario_json(const Scenario& scenario) {
  return std::visit(
      Overloaded{
          [](const SanityCheck& s) {
            return json{{"type", "sanity_check"}, {"phi", s.phi}};
          },
          [](const AbruptChange& s) {
            return json{{"type", "abrupt_change"},
                        {"phi_a", s.phi_a},
                        {"phi_b", s.phi_b},
                        {"change_index", s.change_index}};
          },
          [](const ConstantChange& s) {
            return json{{"type", "constant_change"},
                        {"phi_start", s.phi_start},
                        {"phi_end", s.phi_end}};
          },
      },
      scenario);
}

OnlineHyper parse_hyper(const json& j) {
  require_object(j, "hyper");
  reject_unknown(j, {"ons", "ogd", "obr"}, "hyper");
  OnlineHyper h;
  if (j.contains("ons")) {
    const json& o = require_object(j.at("ons"), "hyper.ons");
    reject_unknown(o, {"eta"}, "hyper.ons");
    h.ons.eta = get_number(o, "eta", "hyper.ons", h.ons.eta);
  }
  if (j.contains("ogd")) {
    const json& o = require_object(j.at("ogd"), "hyper.ogd");
    reject_unknown(o, {"eta"}, "hyper.ogd");
    h.ogd.eta = get_number(o, "eta", "hyper.ogd", h.ogd.eta);
  }
  if (j.contains("obr")) {
    const json& o = require_object(j.at("obr"), "hyper.obr");
    reject_unknown(o, {"p1", "sigma", "q"}, "hyper.obr");
    h.obr.p1 = get_number(o, "p1", "hyper.obr", h.obr.p1);
    h.obr.sigma = get_number(o, "sigma", "hyper.obr", h.obr.sigma);
    h.obr.q = get_number(o, "q", "hyper.obr", h.obr.q);
  }
  return h;
}

void check_same_methods(const std::vector<ExperimentSummary>& summaries) {
  for (const auto& s : summaries) {
    if (s.config.methods != summaries.front().config.methods) {
      throw std::invalid_argument("summaries must share one method list");
    }
  }
}

}  // namespace

std::vector<ExperimentConfig> ExperimentPlan::expand() const {
  std::vector<ExperimentConfig> out;
  for (const auto& gap : gaps) {
    ExperimentConfig c = base;
    c.gap_spec = gap;
    out.push_back(std::move(c));
  }
  return out;
}

ExperimentPlan parse_experiment_plan(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "config");
  reject_unknown(root,
                 {"n", "reps", "base_seed", "gaps", "scenario", "warm_fraction",
                  "methods", "hyper", "mle_sigma", "sigma",
                  "batch_refit_every", "threads"},
                 "config");

  ExperimentPlan plan;
  ExperimentConfig& c = plan.base;
  c.n = get_count(root, "n", c.n);
  c.reps = get_count(root, "reps", c.reps);
  c.base_seed = get_count(root, "base_seed", c.base_seed);
  c.batch_refit_every = get_count(root, "batch_refit_every", c.batch_refit_every);
  c.threads = get_count(root, "threads", c.threads);
  c.warm_fraction =
      get_number(root, "warm_fraction", "config", c.warm_fraction);
  c.sigma = get_number(root, "sigma", "config", c.sigma);
  if (root.contains("scenario")) c.scenario = parse_scenario(root.at("scenario"));
  if (root.contains("hyper")) c.hyper = parse_hyper(root.at("hyper"));

  if (root.contains("mle_sigma")) {
    const json& v = root.at("mle_sigma");
    if (v.is_string() && v.get<std::string>() == "from-sample") {
      c.mle_sigma.reset();
    } else if (v.is_number()) {
      c.mle_sigma = v.get<double>();
    } else {
      throw std::invalid_argument(
          "'mle_sigma' must be a number or \"from-sample\"");
    }
  }

  if (root.contains("methods")) {
    const json& v = root.at("methods");
    if (!v.is_array()) throw std::invalid_argument("'methods' must be an array");
    c.methods.clear();
    for (const json& m : v) {
      if (!m.is_string()) {
        throw std::invalid_argument("'methods' entries must be strings");
      }
      c.methods.push_back(parse_method(m.get<std::string>()));
    }
  }

  if (root.contains("gaps")) {
    const json& v = root.at("gaps");
    auto add = [&](const json& g) {
      if (!g.is_string()) {
        throw std::invalid_argument("'gaps' entries must be strings");
      }
      plan.gaps.push_back(parse_gap_spec(g.get<std::string>()));
    };
    if (v.is_array()) {
      for (const json& g : v) add(g);
    } else {
      add(v);
    }
  } else {
    plan.gaps.push_back(c.gap_spec);
  }
  if (plan.gaps.empty()) throw std::invalid_argument("'gaps' is empty");
  c.gap_spec = plan.gaps.front();

  for (const auto& config : plan.expand()) validate(config);
  return plan;
}

ExperimentPlan read_experiment_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_experiment_plan(buffer.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string to_json(const ExperimentPlan& plan) {
  const ExperimentConfig& c = plan.base;
  json root;
  root["n"] = c.n;
  root["reps"] = c.reps;
  root["base_seed"] = c.base_seed;
  json gaps = json::array();
  for (const auto& g : plan.gaps) gaps.push_back(format_gap_spec(g));
  root["gaps"] = gaps;
  root["scenario"] = scenario_json(c.scenario);
  root["warm_fraction"] = c.warm_fraction;
  root["sigma"] = c.sigma;
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(std::string(to_string(m)));
  root["methods"] = methods;
  root["hyper"] = {
      {"ons", {{"eta", c.hyper.ons.eta}}},
      {"ogd", {{"eta", c.hyper.ogd.eta}}},
      {"obr", {{"p1", c.hyper.obr.p1},
               {"sigma", c.hyper.obr.sigma},
               {"q", c.hyper.obr.q}}},
  };
  if (c.mle_sigma) {
    root["mle_sigma"] = *c.mle_sigma;
  } else {
    root["mle_sigma"] = "from-sample";
  }
  root["batch_refit_every"] = c.batch_refit_every;
  root["threads"] = c.threads;
  return root.dump(2);
}

void write_summary_csv(std::ostream& out,
                       const std::vector<ExperimentSummary>& summaries) {
  if (summaries.empty()) return;
  check_same_methods(summaries);
  const auto& methods = summaries.front().config.methods;
  out << "obs_time,gaps,scenario";
  for (Method m : methods) out << ",phi_" << to_string(m);
  for (Method m : methods) out << ",mse_" << to_string(m);
  out << '\n';
  for (const auto& s : summaries) {
    out << quoted(gap_label(s.config.gap_spec)) << ','
        << quoted(format_gap_spec(s.config.gap_spec)) << ','
        << scenario_name(s.config.scenario);
    for (Method m : methods) out << ',' << num(s.at(m).final_mean);
    for (Method m : methods) out << ',' << num(s.at(m).mse_mean);
    out << '\n';
  }
}

void write_timings_csv(std::ostream& out,
                       const std::vector<ExperimentSummary>& summaries) {
  if (summaries.empty()) return;
  check_same_methods(summaries);
  const auto& methods = summaries.front().config.methods;
  out << "obs_time";
  for (Method m : methods) out << ",seconds_" << to_string(m);
  out << '\n';
  for (const auto& s : summaries) {
    out << quoted(gap_label(s.config.gap_spec));
    for (Method m : methods) out << ',' << num(s.at(m).seconds_mean);
    out << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const ExperimentSummary& summary) {
  out << "index,true_phi";
  for (const auto& m : summary.methods) {
    const auto name = to_string(m.method);
    out << ',' << name << "_mean," << name << "_lo," << name << "_hi";
  }
  out << '\n';
  for (std::size_t i = 0; i < summary.true_phi.size(); ++i) {
    out << i + 1 << ',' << num(summary.true_phi[i]);
    for (const auto& m : summary.methods) {
      out << ',' << num(m.traj_mean[i]) << ',' << num(m.traj_lo[i]) << ','
          << num(m.traj_hi[i]);
    }
    out << '\n';
  }
}

void write_bench_csv(std::ostream& out, const BenchResult& bench) {
  out << "n";
  for (Method m : bench.methods) out << ",seconds_" << to_string(m);
  out << '\n';
  for (std::size_t s = 0; s < bench.sizes.size(); ++s) {
    out << bench.sizes[s];
    for (double t : bench.seconds[s]) out << ',' << num(t);
    out << '\n';
  }
}

}  // namespace iar
