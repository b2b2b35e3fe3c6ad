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

#include "iar/sampling.h"

#include <charconv>
#include <functional>
#include <cmath>
#include <random>
#include <stdexcept>
#include <system_error>

#include "rng.h"

namespace iar {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<double> parse_numbers(std::string_view text,
                                  std::string_view whole) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view token = text.substr(0, comma);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size()) {
      throw std::invalid_argument("invalid number '" + std::string(token) +
                                  "' in gap spec '" + std::string(whole) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

void validate(const TimeGapSpec& spec) {
  std::visit(
      Overloaded{
          [](const RegularGaps& s) {
            if (!positive(s.gap)) {
              throw std::invalid_argument("regular gap must be positive");
            }
          },
          [](const UniformGaps& s) {
            if (!std::isfinite(s.a) || !std::isfinite(s.b) || !(s.a > 0.0) ||
                !(s.a < s.b)) {
              throw std::invalid_argument(
                  "uniform gaps need 0 < a < b, got a=" + shortest(s.a) +
                  " b=" + shortest(s.b));
            }
          },
          [](const GammaGaps& s) {
            if (!positive(s.shape) || !positive(s.rate)) {
              throw std::invalid_argument(
                  "gamma gaps need positive shape and rate");
            }
          },
          [](const ExpMixtureGaps& s) {
            if (!positive(s.mean1) || !positive(s.mean2)) {
              throw std::invalid_argument(
                  "exponential mixture needs positive means");
            }
            if (!(s.w1 > 0.0 && s.w1 < 1.0)) {
              throw std::invalid_argument(
                  "exponential mixture weight w1 must lie in (0, 1)");
            }
          },
      },
      spec);
}

double mean_gap(const TimeGapSpec& spec) {
  return std::visit(
      Overloaded{
          [](const RegularGaps& s) { return s.gap; },
          [](const UniformGaps& s) { return 0.5 * (s.a + s.b); },
          [](const GammaGaps& s) { return s.shape / s.rate; },
          [](const ExpMixtureGaps& s) {
            return s.w1 * s.mean1 + (1.0 - s.w1) * s.mean2;
          },
      },
      spec);
}

TimeGapSpec parse_gap_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument(
        "gap spec '" + std::string(text) +
        "' must look like regular:1, unif:0.5,1.5, gamma:3,3 or "
        "expmix:15,2,0.15");
  }
  const std::string_view kind = text.substr(0, colon);
  const auto args = parse_numbers(text.substr(colon + 1), text);
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw std::invalid_argument("gap spec '" + std::string(text) +
                                  "' expects " + std::to_string(count) +
                                  " parameter(s)");
    }
  };
  TimeGapSpec spec;
  if (kind == "regular") {
    expect(1);
    spec = RegularGaps{args[0]};
  } else if (kind == "unif") {
    expect(2);
    spec = UniformGaps{args[0], args[1]};
  } else if (kind == "gamma") {
    expect(2);
    spec = GammaGaps{args[0], args[1]};
  } else if (kind == "expmix") {
    expect(3);
    spec = ExpMixtureGaps{args[0], args[1], args[2]};
  } else {
    throw std::invalid_argument("unknown gap distribution '" +
                                std::string(kind) + "'");
  }
  validate(spec);
  return spec;
}

std::string format_gap_spec(const TimeGapSpec& spec) {
  return std::visit(
      Overloaded{
          [](const RegularGaps& s) { return "regular:" + shortest(s.gap); },
          [](const UniformGaps& s) {
            return "unif:" + shortest(s.a) + "," + shortest(s.b);
          },
          [](const GammaGaps& s) {
            return "gamma:" + shortest(s.shape) + "," + shortest(s.rate);
          },
          [](const ExpMixtureGaps& s) {
            return "expmix:" + shortest(s.mean1) + "," + shortest(s.mean2) +
                   "," + shortest(s.w1);
          },
      },
      spec);
}

std::string gap_label(const TimeGapSpec& spec) {
  return std::visit(
      Overloaded{
          [](const RegularGaps&) { return std::string("Regular"); },
          [](const UniformGaps& s) {
            return "Unif(" + shortest(s.a) + "," + shortest(s.b) + ")";
          },
          [](const GammaGaps& s) {
            return "Gamma(" + shortest(s.shape) + "," + shortest(s.rate) + ")";
          },
          [](const ExpMixtureGaps& s) {
            return "ExpM(" + shortest(s.mean1) + "," + shortest(s.mean2) +
                   "," + shortest(s.w1) + ")";
          },
      },
      spec);
}

std::vector<double> gen_times(const TimeGapSpec& spec, std::size_t n,
                              std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_times: n must be >= 1");
  validate(spec);
  auto engine = internal::make_engine(seed, internal::Stream::kTimes);

  auto draw = std::visit(
      Overloaded{
          [](const RegularGaps& s) -> std::function<double()> {
            return [g = s.gap] { return g; };
          },
          [&engine](const UniformGaps& s) -> std::function<double()> {
            return [&engine, d = std::uniform_real_distribution<double>(
                                 s.a, s.b)]() mutable { return d(engine); };
          },
          [&engine](const GammaGaps& s) -> std::function<double()> {
            return [&engine, d = std::gamma_distribution<double>(
                                 s.shape, 1.0 / s.rate)]() mutable {
              return d(engine);
            };
          },
          [&engine](const ExpMixtureGaps& s) -> std::function<double()> {
            return [&engine, pick = std::bernoulli_distribution(s.w1),
                    e1 = std::exponential_distribution<double>(1.0 / s.mean1),
                    e2 = std::exponential_distribution<double>(
                        1.0 / s.mean2)]() mutable {
              return pick(engine) ? e1(engine) : e2(engine);
            };
          },
      },
      spec);

  std::vector<double> times(n);
  times[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    double gap = draw();
    // Continuous draws can underflow to zero; keep times strictly increasing.
    for (int retry = 0; !(times[j - 1] + gap > times[j - 1]); ++retry) {
      if (retry == 100) {
        throw std::invalid_argument("gen_times: gaps too small to advance time");
      }
      gap = draw();
    }
    times[j] = times[j - 1] + gap;
  }
  return times;
}

}  // namespace iar
