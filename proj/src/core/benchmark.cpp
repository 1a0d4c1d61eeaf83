/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/benchmark.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "ltr/baselines.hpp"
#include "ltr/io.hpp"
#include "ltr/metrics.hpp"

namespace ltr {

using nlohmann::json;

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kDegree: return "degree";
    case SweepVariable::kRank: return "rank";
    case SweepVariable::kNoise: return "noise";
    case SweepVariable::kVariables: return "variables";
    case SweepVariable::kSampleSize: return "sample_size";
  }
  return "?";
}

SweepVariable sweep_from_string(const std::string& s) {
  if (s == "degree") return SweepVariable::kDegree;
  if (s == "rank") return SweepVariable::kRank;
  if (s == "noise") return SweepVariable::kNoise;
  if (s == "variables") return SweepVariable::kVariables;
  if (s == "sample_size") return SweepVariable::kSampleSize;
  fail(ErrorCode::kInvalidArgument,
       "unknown sweep variable '" + s + "' (expected degree, rank, noise, variables or sample_size)");
}

void BenchmarkConfig::validate() const {
  require(!values.empty(), ErrorCode::kInvalidArgument, "benchmark sweep needs at least one value");
  require(!learners.empty(), ErrorCode::kInvalidArgument, "benchmark needs at least one learner");
  for (const auto& l : learners)
    require(l == "ltr" || l == "lr" || l == "krr", ErrorCode::kInvalidArgument,
            "unknown learner '" + l + "' (expected ltr, lr or krr)");
  require(folds >= 2, ErrorCode::kInvalidArgument, "benchmark needs at least 2 folds");
  require(threads >= 1, ErrorCode::kInvalidArgument, "thread count must be >= 1");
  for (double v : values) {
    require(std::isfinite(v), ErrorCode::kInvalidArgument, "sweep values must be finite");
    if (variable != SweepVariable::kNoise)
      require(v >= 1 && v == std::floor(v), ErrorCode::kInvalidArgument,
              std::string("sweep over ") + to_string(variable) + " needs positive integer values");
  }
}

namespace {

GeneratorSpec spec_at(const BenchmarkConfig& c, double value, std::size_t point) {
  GeneratorSpec s = c.base;
  const auto as_index = static_cast<Index>(value);
  switch (c.variable) {
    case SweepVariable::kDegree: s.degree = as_index; break;
    case SweepVariable::kRank: s.rank = as_index; break;
    case SweepVariable::kNoise: s.noise = value; break;
    case SweepVariable::kVariables: s.n = as_index; break;
    case SweepVariable::kSampleSize: s.m = as_index; break;
  }
  s.seed = c.seed * 1000003ULL + point;
  return s;
}

Learner make_learner(const BenchmarkConfig& c, const std::string& name, const GeneratorSpec& spec) {
  if (name == "lr") {
    return [](const Dataset& train, const std::vector<Matrix>& test) {
      return Matrix(linreg_predict(linreg_fit(train), test.front()));
    };
  }
  if (name == "krr") {
    return [&c, degree = spec.degree](const Dataset& train, const std::vector<Matrix>& test) {
      return Matrix(krr_predict(krr_fit(train, c.krr_bias, degree, c.krr_ridge), test.front()));
    };
  }
  TrainConfig tc = c.train;
  tc.degree = spec.degree;
  tc.rank = spec.rank;
  if (tc.mode == FitMode::kLayered) tc.rank_blocks.assign(static_cast<std::size_t>(tc.rank), 1);
  tc.seed = spec.seed;
  return [tc](const Dataset& train, const std::vector<Matrix>& test) { return predict(fit(train, tc).model, test); };
}

std::vector<BenchmarkRow> run_point(const BenchmarkConfig& c, std::size_t point) {
  const double value = c.values[point];
  const std::string var = to_string(c.variable);
  std::vector<BenchmarkRow> rows;
  auto failed = [&](const std::string& learner, const std::string& why) {
    for (const char* metric : {"pearson", "rmse", "train_seconds"})
      rows.push_back({learner, var, value, metric, NAN, NAN, why});
  };

  GeneratorSpec spec;
  Dataset data;
  try {
    spec = spec_at(c, value, point);
    data = sample_dataset(generate_model(spec), spec.m, spec.noise, spec.seed + 7);
  } catch (const std::exception& e) {
    for (const auto& l : c.learners) failed(l, std::string("error: ") + e.what());
    return rows;
  }
  for (const auto& name : c.learners) {
    const Index train_rows = spec.m - spec.m / c.folds;
    if (name == "krr" && train_rows > KrrModel::kMaxRows) {
      failed(name, "skipped: training rows exceed KRR cap");
      continue;
    }
    try {
      const CvResult cv = cross_validate(data, c.folds, spec.seed, make_learner(c, name, spec));
      const std::string status = cv.pearson.count == c.folds ? "ok" : "pearson undefined on some folds";
      rows.push_back({name, var, value, "pearson", cv.pearson.count ? cv.pearson.mean : NAN,
                      cv.pearson.std_error, status});
      rows.push_back({name, var, value, "rmse", cv.rmse.mean, cv.rmse.std_error, "ok"});
      rows.push_back({name, var, value, "train_seconds", cv.train_seconds.mean, cv.train_seconds.std_error, "ok"});
    } catch (const std::exception& e) {
      failed(name, std::string("error: ") + e.what());
    }
  }
  return rows;
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  std::vector<std::vector<BenchmarkRow>> per_point(config.values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t p = next++; p < config.values.size(); p = next++) per_point[p] = run_point(config, p);
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(config.threads), config.values.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  BenchmarkResult result;
  for (auto& rows : per_point)
    for (auto& r : rows) result.rows.push_back(std::move(r));
  return result;
}

BenchmarkConfig benchmark_from_json(const json& j) {
  require(j.is_object(), ErrorCode::kInvalidArgument, "benchmark config must be a JSON object");
  BenchmarkConfig c;
  try {
    c.variable = sweep_from_string(j.at("variable").get<std::string>());
    c.values = j.at("values").get<std::vector<double>>();
    if (j.contains("generator")) c.base = io::generator_from_json(j.at("generator"));
    if (j.contains("train")) c.train = io::config_from_json(j.at("train"));
    c.learners = j.value("learners", c.learners);
    c.folds = j.value("folds", c.folds);
    c.krr_bias = j.value("krr_bias", c.krr_bias);
    c.krr_ridge = j.value("krr_ridge", c.krr_ridge);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad benchmark config: ") + e.what());
  }
  return c;
}

std::string benchmark_csv(const BenchmarkResult& result) {
  auto num = [](double v) { return std::isnan(v) ? std::string() : io::format_double(v); };
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::string out = "learner,variable,value,metric,mean,stderr,status\n";
  for (const auto& r : result.rows) {
    out += r.learner + ',' + r.variable + ',' + io::format_double(r.value) + ',' + r.metric + ',' + num(r.mean) +
           ',' + num(r.std_error) + ',' + quote(r.status) + '\n';
  }
  return out;
}

json benchmark_plot_json(const BenchmarkConfig& config, const BenchmarkResult& result) {
  json series = json::object();
  for (const auto& name : config.learners) {
    json learner = json::object();
    for (const char* metric : {"pearson", "rmse", "train_seconds"}) {
      json means = json::array(), errs = json::array();
      for (double v : config.values) {
        json mean = nullptr, err = nullptr;
        for (const auto& r : result.rows)
          if (r.learner == name && r.metric == metric && r.value == v && !std::isnan(r.mean)) {
            mean = r.mean;
            err = r.std_error;
          }
        means.push_back(mean);
        errs.push_back(err);
      }
      learner[metric] = json{{"mean", means}, {"stderr", errs}};
    }
    series[name] = std::move(learner);
  }
  return json{{"variable", to_string(config.variable)}, {"values", config.values}, {"series", std::move(series)}};
}

}  // namespace ltr
