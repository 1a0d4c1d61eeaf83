/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ltr/benchmark.hpp"
#include "ltr/gradcheck.hpp"

namespace ltr {
namespace {

TEST(Gradcheck, RelativeErrorFloor) {
  EXPECT_EQ(relative_error(1.0, 1.0, 1e-6), 0.0);
  EXPECT_DOUBLE_EQ(relative_error(2.0, 1.0, 1e-6), 0.5);
  EXPECT_DOUBLE_EQ(relative_error(1e-9, 0.0, 1e-6), 1e-3);
}

TEST(Gradcheck, DefaultGridPasses) {
  const GradcheckReport r = run_gradcheck(GradcheckOptions{});
  EXPECT_TRUE(r.passed);
  // 4 degrees x 2 output widths x 2 view modes x 2 links x 3 groups
  EXPECT_EQ(r.entries.size(), 96u);
  for (const auto& e : r.entries) EXPECT_LE(e.max_rel_error, 1e-5) << e.shape << " " << to_string(e.group);
}

TEST(Gradcheck, DetectsEachCorruptedGroup) {
  for (ParamGroup g : {ParamGroup::kLambda, ParamGroup::kP, ParamGroup::kQ}) {
    GradcheckOptions o;
    o.degrees = {1, 3};
    o.corrupt = g;
    const GradcheckReport r = run_gradcheck(o);
    EXPECT_FALSE(r.passed);
    for (const auto& e : r.entries) EXPECT_EQ(e.passed, e.group != g) << e.shape << " " << to_string(e.group);
  }
}

std::map<std::string, double> means(const BenchmarkResult& r, const std::string& metric) {
  std::map<std::string, double> out;
  for (const auto& row : r.rows)
    if (row.metric == metric) out[row.learner + "@" + std::to_string(static_cast<int>(row.value))] = row.mean;
  return out;
}

TEST(Benchmark, DegreeSweepOrdering) {
  BenchmarkConfig c;
  c.variable = SweepVariable::kDegree;
  c.values = {1, 2, 3};
  c.base.n = 10;
  c.base.rank = 2;
  c.base.m = 10000;
  c.seed = 5;
  const auto p = means(run_benchmark(c), "pearson");
  for (int d = 1; d <= 3; ++d) EXPECT_GE(p.at("ltr@" + std::to_string(d)), 0.95) << "degree " << d;
  EXPECT_GE(p.at("lr@1"), 0.99);
  EXPECT_LT(p.at("lr@2"), p.at("lr@1"));
  EXPECT_LT(std::abs(p.at("lr@2")), 0.3);
}

TEST(Benchmark, RerunReproducesAccuracy) {
  BenchmarkConfig c;
  c.variable = SweepVariable::kRank;
  c.values = {1, 2};
  c.base.n = 5;
  c.base.degree = 2;
  c.base.m = 600;
  c.learners = {"ltr", "lr", "krr"};
  c.seed = 8;
  const BenchmarkResult a = run_benchmark(c), b = run_benchmark(c);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].metric == "train_seconds") continue;
    EXPECT_EQ(a.rows[i].mean, b.rows[i].mean) << a.rows[i].learner << " " << a.rows[i].metric;
    EXPECT_EQ(a.rows[i].std_error, b.rows[i].std_error);
  }
}

TEST(Benchmark, ThreadedMatchesSerial) {
  BenchmarkConfig c;
  c.variable = SweepVariable::kNoise;
  c.values = {0.0, 0.5, 1.0};
  c.base.n = 4;
  c.base.degree = 2;
  c.base.rank = 2;
  c.base.m = 500;
  const BenchmarkResult serial = run_benchmark(c);
  c.threads = 3;
  const BenchmarkResult threaded = run_benchmark(c);
  ASSERT_EQ(serial.rows.size(), threaded.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i)
    if (serial.rows[i].metric != "train_seconds") EXPECT_EQ(serial.rows[i].mean, threaded.rows[i].mean);
}

TEST(Benchmark, KrrCapRecordedInStatus) {
  BenchmarkConfig c;
  c.variable = SweepVariable::kSampleSize;
  c.values = {50000};
  c.base.n = 3;
  c.base.degree = 1;
  c.base.rank = 1;
  c.learners = {"krr"};
  const BenchmarkResult r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_NE(r.rows[0].status.find("skipped"), std::string::npos);
  EXPECT_NE(benchmark_csv(r).find("pearson,,,skipped"), std::string::npos) << benchmark_csv(r);
}

TEST(Benchmark, FailuresStayInRow) {
  BenchmarkConfig c;
  c.variable = SweepVariable::kVariables;
  c.values = {2, 3};
  c.base.degree = 2;
  c.base.rank = 1;
  c.base.m = 200;
  c.train.learning_rate = 1e200;
  c.learners = {"ltr", "lr"};
  const BenchmarkResult r = run_benchmark(c);
  for (const auto& row : r.rows) {
    if (row.learner == "ltr") EXPECT_EQ(row.status.rfind("error", 0), 0u) << row.status;
    if (row.learner == "lr") EXPECT_EQ(row.status, "ok");
  }
}

TEST(Benchmark, ConfigValidation) {
  EXPECT_THROW(benchmark_from_json({{"variable", "degree"}, {"values", {1.5}}}).validate(), Error);
  EXPECT_THROW(benchmark_from_json({{"variable", "degree"}, {"values", {2}}, {"learners", {"svm"}}}).validate(),
               Error);
}

}  // namespace
}  // namespace ltr
