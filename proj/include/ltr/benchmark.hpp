/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltr/datagen.hpp"
#include "ltr/training.hpp"

namespace ltr {

enum class SweepVariable { kDegree, kRank, kNoise, kVariables, kSampleSize };

const char* to_string(SweepVariable v);
SweepVariable sweep_from_string(const std::string& s);

/// One sweep: a single generator parameter runs over `values`, everything
/// else stays at `base`. The learner degree and rank follow the data.
struct BenchmarkConfig {
  SweepVariable variable = SweepVariable::kDegree;
  std::vector<double> values;
  GeneratorSpec base;
  std::vector<std::string> learners{"ltr", "lr"};  // any of ltr, lr, krr
  TrainConfig train;
  int folds = 2;
  double krr_bias = 1.0;
  double krr_ridge = 1e-3;
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

/// One tidy result row: learner x grid value x metric.
struct BenchmarkRow {
  std::string learner;
  std::string variable;
  double value = 0.0;
  std::string metric;  // pearson, rmse, train_seconds
  double mean = 0.0;
  double std_error = 0.0;
  std::string status = "ok";
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
};

BenchmarkResult run_benchmark(const BenchmarkConfig& config);

BenchmarkConfig benchmark_from_json(const nlohmann::json& j);
/// Tidy CSV: learner,variable,value,metric,mean,stderr,status
std::string benchmark_csv(const BenchmarkResult& result);
/// Series per learner and metric, indexed like the sweep values.
nlohmann::json benchmark_plot_json(const BenchmarkConfig& config, const BenchmarkResult& result);

}  // namespace ltr
