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

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "iar/data_pipeline.h"
#include "iar/errors.h"
#include "iar/stats.h"
#include "oracles.h"

namespace iar {
namespace {

RawSeries parse(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in, "test.csv");
}

template <class E>
std::string message_of(const std::string& text) {
  try {
    parse(text);
  } catch (const E& e) {
    return e.what();
  }
  ADD_FAILURE() << "no exception for:\n" << text;
  return {};
}

TEST(ReadCsv, WellFormed) {
  const RawSeries r = parse("time,value\n0,1.5\n1,2\n2.5,-3e-1\n");
  EXPECT_EQ(r.times, (std::vector<double>{0, 1, 2.5}));
  EXPECT_EQ(r.values, (std::vector<double>{1.5, 2, -0.3}));
  EXPECT_FALSE(r.err_sd.has_value());
}

TEST(ReadCsv, SortsByTimeAndKeepsColumnsTogether) {
  const RawSeries r =
      parse("value,err_sd,time\n30,0.3,3\n10,0.1,1\n20,0.2,2\n");
  EXPECT_EQ(r.times, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(r.values, (std::vector<double>{10, 20, 30}));
  EXPECT_EQ(*r.err_sd, (std::vector<double>{0.1, 0.2, 0.3}));
}

TEST(ReadCsv, ToleratesBomCrlfAndBlankLines) {
  const RawSeries r = parse("\xEF\xBB\xBFtime,value\r\n0,1\r\n\r\n1,2\r\n");
  EXPECT_EQ(r.values, (std::vector<double>{1, 2}));
}

TEST(ReadCsv, DuplicateTimeNamesTheTime) {
  const std::string msg =
      message_of<DataError>("time,value\n5.0,1\n1,2\n5.0,3\n");
  EXPECT_NE(msg.find("5.0"), std::string::npos) << msg;
}

TEST(ReadCsv, MissingColumnIsASchemaError) {
  const std::string msg = message_of<SchemaError>("t,value\n1,2\n");
  EXPECT_NE(msg.find("time"), std::string::npos) << msg;
  message_of<SchemaError>("");
}

TEST(ReadCsv, NonNumericCellNamesTheLine) {
  const std::string msg = message_of<ParseError>("time,value\n0,1\n1,abc\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  message_of<ParseError>("time,value\n0\n");
}

TEST(ReadCsv, NegativeErrorSdIsRejected) {
  message_of<DataError>("time,value,err_sd\n0,1,-0.5\n");
}

TEST(ReadCsv, MissingFile) {
  EXPECT_THROW(read_csv("/nonexistent/file.csv"), std::runtime_error);
}

TEST(WriteCsv, RoundTrips) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  RawSeries r;
  double t = 0;
  for (int i = 0; i < 200; ++i) {
    t += std::exp(z(rng));
    r.times.push_back(t);
    r.values.push_back(z(rng) * 1e3);
  }
  r.err_sd = std::vector<double>(200, 0.1234567890123);
  std::ostringstream out;
  write_csv(out, r, {{"prediction", std::vector<double>(200, 1.0 / 3.0)}});
  const RawSeries back = parse(out.str());
  ASSERT_EQ(back.values.size(), 200u);
  for (std::size_t i = 0; i < 200; ++i) {
    EXPECT_NEAR(back.times[i], r.times[i], 1e-12 * std::abs(r.times[i]));
    EXPECT_NEAR(back.values[i], r.values[i], 1e-12 * std::abs(r.values[i]));
    EXPECT_EQ((*back.err_sd)[i], (*r.err_sd)[i]);
  }
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "time,value,err_sd,prediction");
}

TEST(ToTimeSeries, SquaresErrorSd) {
  RawSeries r{{0, 1}, {1, 2}, std::vector<double>{0.5, 2.0}};
  const TimeSeries s = to_time_series(r);
  EXPECT_EQ(s.err_var(0), 0.25);
  EXPECT_EQ(s.err_var(1), 4.0);
}

std::vector<double> range(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i);
  return t;
}

TEST(Lowess, ConstantSeries) {
  const auto t = range(30);
  for (double v : lowess_trend(t, std::vector<double>(30, 4.25))) {
    EXPECT_NEAR(v, 4.25, 1e-12);
  }
}

TEST(Lowess, LinearDataMatchesLeastSquaresLine) {
  std::vector<double> t = {0.0, 0.3, 1.1, 1.5, 2.8, 3.0, 4.4, 6.1, 7.0, 9.5};
  std::vector<double> y;
  for (double x : t) y.push_back(-1.25 + 0.7 * x);
  const oracle::Line line = oracle::ols_line(t, y);
  const auto trend = lowess_trend(t, y, 1.0, 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(trend[i], line.intercept + line.slope * t[i], 1e-8);
  }
}

TEST(Lowess, SineResidualsAverageOut) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise(0.0, 0.3);
  const auto t = range(500);
  std::vector<double> y;
  for (double x : t) y.push_back(std::sin(x / 40.0) + noise(rng));
  const auto trend = lowess_trend(t, y, 2.0 / 3.0, 3);
  std::vector<double> resid;
  for (std::size_t i = 0; i < y.size(); ++i) resid.push_back(y[i] - trend[i]);
  EXPECT_NEAR(sample_mean(resid), 0.0, 0.05);
}

TEST(Lowess, ShiftEquivariance) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  std::vector<double> t, y, y_shift;
  double now = 0;
  for (int i = 0; i < 80; ++i) {
    now += 0.2 + std::abs(z(rng));
    t.push_back(now);
    y.push_back(z(rng));
    y_shift.push_back(y.back() + 12.5);
  }
  const auto a = lowess_trend(t, y);
  const auto b = lowess_trend(t, y_shift);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(b[i], a[i] + 12.5, 1e-10);
}

TEST(Lowess, RobustnessDownweightsOutliers) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 0.1);
  auto t = range(60);
  std::vector<double> y;
  for (int i = 0; i < 60; ++i) y.push_back(1.0 + noise(rng));
  y[30] = 100.0;
  const auto plain = lowess_trend(t, y, 0.3, 0);
  const auto robust = lowess_trend(t, y, 0.3, 3);
  EXPECT_GT(plain[29], 2.0);
  EXPECT_NEAR(robust[29], 1.0, 0.15);

  // Without noise the residual scale is zero and reweighting stops.
  std::vector<double> flat(60, 1.0);
  flat[30] = 100.0;
  EXPECT_EQ(lowess_trend(t, flat, 0.3, 3), lowess_trend(t, flat, 0.3, 0));
}

TEST(Lowess, Preconditions) {
  const auto t = range(10);
  const std::vector<double> y(10, 1.0);
  EXPECT_THROW(lowess_trend(t, y, 0.1, 0), std::invalid_argument);
  EXPECT_THROW(lowess_trend(t, y, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(lowess_trend(t, y, 0.5, -1), std::invalid_argument);
  EXPECT_THROW(lowess_trend(range(2), {1, 2}, 1.0, 0), std::invalid_argument);
  EXPECT_NO_THROW(lowess_trend(t, y, 0.2, 0));
}

TEST(Preprocess, StandardizesExactly) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  RawSeries raw;
  raw.err_sd.emplace();
  double now = 0;
  for (int i = 0; i < 300; ++i) {
    now += 0.5 + std::abs(z(rng));
    raw.times.push_back(now);
    raw.values.push_back(50 + 0.1 * now + 3 * z(rng));
    raw.err_sd->push_back(0.2);
  }
  const TimeSeries s = preprocess(raw);
  const std::vector<double> v(s.values().begin(), s.values().end());
  EXPECT_LT(std::abs(sample_mean(v)), 1e-10);
  EXPECT_NEAR(sample_sd(v) * sample_sd(v), 1.0, 1e-10);

  // err_sd is rescaled by the same factor as the values.
  std::vector<double> detrended(raw.values);
  const auto trend = lowess_trend(raw.times, raw.values);
  for (std::size_t i = 0; i < detrended.size(); ++i) detrended[i] -= trend[i];
  const double scale = sample_sd(detrended);
  EXPECT_NEAR(s.err_var(0), 0.04 / (scale * scale), 1e-12);
}

TEST(Preprocess, NearIdentityOnStandardizedTrendlessData) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  RawSeries raw;
  for (int i = 0; i < 400; ++i) {
    raw.times.push_back(i);
    raw.values.push_back(z(rng));
  }
  const double m = sample_mean(raw.values), sd = sample_sd(raw.values);
  for (double& v : raw.values) v = (v - m) / sd;
  const TimeSeries s = preprocess(raw, 1.0, 3);
  double sq = 0;
  for (std::size_t i = 0; i < 400; ++i) {
    sq += std::pow(s.value(i) - raw.values[i], 2);
  }
  EXPECT_LT(std::sqrt(sq / 400), 0.1);
}

TEST(Preprocess, ConstantInputIsDegenerate) {
  RawSeries raw{{0, 1, 2, 3, 4}, {7, 7, 7, 7, 7}, std::nullopt};
  EXPECT_THROW(preprocess(raw), DegenerateDataError);
  RawSeries linear{{0, 1, 2, 3, 4}, {1, 3, 5, 7, 9}, std::nullopt};
  EXPECT_THROW(preprocess(linear, 1.0, 0), DegenerateDataError);
}

}  // namespace
}  // namespace iar
