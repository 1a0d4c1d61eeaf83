/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/ltr.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ltr/benchmark.hpp"
#include "ltr/datagen.hpp"
#include "ltr/gradcheck.hpp"
#include "ltr/io.hpp"
#include "ltr/metrics.hpp"
#include "ltr/training.hpp"

struct ltr_model {
  ltr::LtrModel impl;
};

struct ltr_dataset {
  ltr::Dataset impl;
};

namespace {

using ltr::ErrorCode;
using ltr::Index;
using ltr::Matrix;
using nlohmann::json;
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

thread_local std::string g_last_error;

ltr_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return LTR_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return LTR_ERR_DIMENSION;
    case ErrorCode::kIo: return LTR_ERR_IO;
    case ErrorCode::kDiverged: return LTR_ERR_DIVERGED;
    case ErrorCode::kNumeric: return LTR_ERR_NUMERIC;
    case ErrorCode::kUndefined: return LTR_ERR_UNDEFINED;
    case ErrorCode::kCheckFailed: return LTR_ERR_CHECK_FAILED;
  }
  return LTR_ERR_INTERNAL;
}

template <typename Fn>
ltr_status guarded(const char* where, Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const ltr::Error& e) {
    g_last_error = std::string(where) + ": " + e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = std::string(where) + ": out of memory";
    return LTR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string(where) + ": " + e.what();
    return LTR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = std::string(where) + ": unknown error";
    return LTR_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  ltr::require(p != nullptr, ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

Matrix from_row_major(const double* data, size_t rows, size_t cols) {
  if (rows * cols > 0) need(data, "input array");
  Matrix out(static_cast<Index>(rows), static_cast<Index>(cols));
  if (rows * cols > 0) out = Eigen::Map<const RowMajor>(data, static_cast<Index>(rows), static_cast<Index>(cols));
  return out;
}

void to_row_major(const Matrix& m, double* out, size_t len) {
  const auto needed = static_cast<size_t>(m.size());
  ltr::require(len >= needed, ErrorCode::kDimensionMismatch,
               "output buffer holds " + std::to_string(len) + " values, need " + std::to_string(needed));
  if (needed == 0) return;
  need(out, "output buffer");
  Eigen::Map<RowMajor>(out, m.rows(), m.cols()) = m;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

json parse_json(const char* text, const char* what) {
  if (text == nullptr || *text == '\0') return json::object();
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    ltr::fail(ErrorCode::kInvalidArgument, std::string("malformed ") + what + ": " + e.what());
  }
}

ltr::Vector vec(const double* p, size_t len) {
  if (len > 0) need(p, "input array");
  return len ? ltr::Vector(Eigen::Map<const ltr::Vector>(p, static_cast<Index>(len))) : ltr::Vector();
}

}  // namespace

extern "C" {

const char* ltr_version(void) { return "1.0.0"; }

const char* ltr_status_string(ltr_status status) {
  switch (status) {
    case LTR_OK: return "ok";
    case LTR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LTR_ERR_DIMENSION: return "dimension mismatch";
    case LTR_ERR_IO: return "i/o error";
    case LTR_ERR_DIVERGED: return "training diverged";
    case LTR_ERR_NUMERIC: return "numerical failure";
    case LTR_ERR_UNDEFINED: return "undefined result";
    case LTR_ERR_CHECK_FAILED: return "check failed";
    case LTR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ltr_last_error(void) { return g_last_error.c_str(); }

void ltr_string_free(char* s) { std::free(s); }

ltr_status ltr_dataset_create(const double* x, size_t m, size_t n, const double* y, size_t n_y, ltr_dataset** out) {
  return guarded("ltr_dataset_create", [&] {
    need(out, "out");
    ltr::Dataset d(from_row_major(x, m, n), from_row_major(y, m, n_y));
    d.validate();
    *out = new ltr_dataset{std::move(d)};
    return LTR_OK;
  });
}

ltr_status ltr_dataset_add_view(ltr_dataset* data, const double* x, size_t m, size_t n_v) {
  return guarded("ltr_dataset_add_view", [&] {
    need(data, "dataset");
    ltr::require(static_cast<Index>(m) == data->impl.rows(), ErrorCode::kDimensionMismatch,
                 "view has " + std::to_string(m) + " rows, dataset has " + std::to_string(data->impl.rows()));
    data->impl.views.push_back(from_row_major(x, m, n_v));
    data->impl.validate();
    return LTR_OK;
  });
}

ltr_status ltr_dataset_load_csv(const char* path, ltr_dataset** out) {
  return guarded("ltr_dataset_load_csv", [&] {
    need(path, "path");
    need(out, "out");
    *out = new ltr_dataset{ltr::io::read_dataset(path)};
    return LTR_OK;
  });
}

ltr_status ltr_dataset_load_views(const char* const* view_paths, size_t n_views, const char* target_path,
                                  ltr_dataset** out) {
  return guarded("ltr_dataset_load_views", [&] {
    need(view_paths, "view_paths");
    need(target_path, "target_path");
    need(out, "out");
    std::vector<std::string> paths;
    for (size_t i = 0; i < n_views; ++i) {
      need(view_paths[i], "view path");
      paths.emplace_back(view_paths[i]);
    }
    *out = new ltr_dataset{ltr::io::read_multiview(paths, target_path)};
    return LTR_OK;
  });
}

ltr_status ltr_dataset_save_csv(const ltr_dataset* data, const char* path) {
  return guarded("ltr_dataset_save_csv", [&] {
    need(data, "dataset");
    need(path, "path");
    ltr::io::write_dataset(path, data->impl);
    return LTR_OK;
  });
}

ltr_status ltr_dataset_shape(const ltr_dataset* data, size_t* rows, size_t* views, size_t* n_y) {
  return guarded("ltr_dataset_shape", [&] {
    need(data, "dataset");
    if (rows) *rows = static_cast<size_t>(data->impl.rows());
    if (views) *views = data->impl.views.size();
    if (n_y) *n_y = static_cast<size_t>(data->impl.outputs());
    return LTR_OK;
  });
}

ltr_status ltr_dataset_view_cols(const ltr_dataset* data, size_t view, size_t* cols) {
  return guarded("ltr_dataset_view_cols", [&] {
    need(data, "dataset");
    need(cols, "cols");
    ltr::require(view < data->impl.views.size(), ErrorCode::kInvalidArgument, "view index out of range");
    *cols = static_cast<size_t>(data->impl.views[view].cols());
    return LTR_OK;
  });
}

ltr_status ltr_dataset_view(const ltr_dataset* data, size_t view, double* buf, size_t len) {
  return guarded("ltr_dataset_view", [&] {
    need(data, "dataset");
    ltr::require(view < data->impl.views.size(), ErrorCode::kInvalidArgument, "view index out of range");
    to_row_major(data->impl.views[view], buf, len);
    return LTR_OK;
  });
}

ltr_status ltr_dataset_targets(const ltr_dataset* data, double* buf, size_t len) {
  return guarded("ltr_dataset_targets", [&] {
    need(data, "dataset");
    to_row_major(data->impl.Y, buf, len);
    return LTR_OK;
  });
}

void ltr_dataset_free(ltr_dataset* data) { delete data; }

ltr_status ltr_generate_model(size_t n, size_t degree, size_t rank, uint64_t seed, ltr_model** out) {
  return guarded("ltr_generate_model", [&] {
    need(out, "out");
    ltr::GeneratorSpec spec;
    spec.n = static_cast<Index>(n);
    spec.degree = static_cast<Index>(degree);
    spec.rank = static_cast<Index>(rank);
    spec.seed = seed;
    *out = new ltr_model{ltr::generate_model(spec)};
    return LTR_OK;
  });
}

ltr_status ltr_sample_dataset(const ltr_model* model, size_t m, double noise, uint64_t seed, ltr_dataset** out) {
  return guarded("ltr_sample_dataset", [&] {
    need(model, "model");
    need(out, "out");
    *out = new ltr_dataset{ltr::sample_dataset(model->impl, static_cast<Index>(m), noise, seed)};
    return LTR_OK;
  });
}

ltr_status ltr_quadratic_dataset(const char* name, size_t m, uint64_t seed, ltr_dataset** out) {
  return guarded("ltr_quadratic_dataset", [&] {
    need(name, "name");
    need(out, "out");
    *out = new ltr_dataset{ltr::quadratic_dataset(ltr::quadratic_from_string(name), static_cast<Index>(m), seed)};
    return LTR_OK;
  });
}

ltr_status ltr_fit(const ltr_dataset* data, const char* config_json, ltr_model** out, char** report_json) {
  return guarded("ltr_fit", [&] {
    need(data, "dataset");
    need(out, "out");
    const ltr::TrainConfig config = ltr::io::config_from_json(parse_json(config_json, "training config"));
    ltr::FitResult result = ltr::fit(data->impl, config);
    if (report_json) *report_json = dup_string(ltr::io::report_to_json(result.report).dump(2));
    *out = new ltr_model{std::move(result.model)};
    return LTR_OK;
  });
}

ltr_status ltr_model_predict(const ltr_model* model, const double* x, size_t m, size_t n, double* out,
                             size_t out_len) {
  return guarded("ltr_model_predict", [&] {
    need(model, "model");
    ltr::require(!model->impl.multi_view(), ErrorCode::kDimensionMismatch,
                 "multi-view model: use ltr_model_predict_dataset");
    const Index expected = model->impl.input_dim(0) - (model->impl.homogenized ? 1 : 0);
    ltr::require(static_cast<Index>(n) == expected, ErrorCode::kDimensionMismatch,
                 "expected " + std::to_string(expected) + " input columns, found " + std::to_string(n));
    const Matrix pred = ltr::predict(model->impl, {from_row_major(x, m, n)});
    to_row_major(pred, out, out_len);
    return LTR_OK;
  });
}

ltr_status ltr_model_predict_dataset(const ltr_model* model, const ltr_dataset* data, double* out, size_t out_len) {
  return guarded("ltr_model_predict_dataset", [&] {
    need(model, "model");
    need(data, "dataset");
    to_row_major(ltr::predict(model->impl, data->impl.views), out, out_len);
    return LTR_OK;
  });
}

ltr_status ltr_model_shape(const ltr_model* model, size_t* degree, size_t* rank, size_t* input_cols, size_t* n_y,
                           int* homogenized, int* logistic) {
  return guarded("ltr_model_shape", [&] {
    need(model, "model");
    const auto& m = model->impl;
    if (degree) *degree = static_cast<size_t>(m.degree());
    if (rank) *rank = static_cast<size_t>(m.rank());
    if (input_cols) *input_cols = static_cast<size_t>(m.input_dim(0) - (m.homogenized ? 1 : 0));
    if (n_y) *n_y = static_cast<size_t>(m.outputs());
    if (homogenized) *homogenized = m.homogenized ? 1 : 0;
    if (logistic) *logistic = m.link == ltr::Link::kLogistic ? 1 : 0;
    return LTR_OK;
  });
}

ltr_status ltr_model_load(const char* path, ltr_model** out) {
  return guarded("ltr_model_load", [&] {
    need(path, "path");
    need(out, "out");
    *out = new ltr_model{ltr::io::load_model(path)};
    return LTR_OK;
  });
}

ltr_status ltr_model_save(const ltr_model* model, const char* path) {
  return guarded("ltr_model_save", [&] {
    need(model, "model");
    need(path, "path");
    ltr::io::save_model(path, model->impl);
    return LTR_OK;
  });
}

ltr_status ltr_model_to_json(const ltr_model* model, char** json_out) {
  return guarded("ltr_model_to_json", [&] {
    need(model, "model");
    need(json_out, "out");
    *json_out = dup_string(ltr::io::model_to_json(model->impl).dump(2));
    return LTR_OK;
  });
}

ltr_status ltr_model_from_json(const char* text, ltr_model** out) {
  return guarded("ltr_model_from_json", [&] {
    need(text, "json");
    need(out, "out");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      ltr::fail(ErrorCode::kIo, std::string("malformed model JSON: ") + e.what());
    }
    *out = new ltr_model{ltr::io::model_from_json(j)};
    return LTR_OK;
  });
}

void ltr_model_free(ltr_model* model) { delete model; }

ltr_status ltr_pearson(const double* y, const double* yhat, size_t len, double* out) {
  return guarded("ltr_pearson", [&] {
    need(out, "out");
    const auto r = ltr::pearson(vec(y, len), vec(yhat, len));
    if (!r) {
      g_last_error = "ltr_pearson: zero variance, correlation undefined";
      return LTR_ERR_UNDEFINED;
    }
    *out = *r;
    return LTR_OK;
  });
}

ltr_status ltr_rmse(const double* y, const double* yhat, size_t len, double* out) {
  return guarded("ltr_rmse", [&] {
    need(out, "out");
    *out = ltr::rmse(vec(y, len), vec(yhat, len));
    return LTR_OK;
  });
}

ltr_status ltr_f1_multilabel(const double* truth, const double* pred, size_t rows, size_t cols, double* out) {
  return guarded("ltr_f1_multilabel", [&] {
    need(out, "out");
    *out = ltr::f1_multilabel(from_row_major(truth, rows, cols), from_row_major(pred, rows, cols));
    return LTR_OK;
  });
}

ltr_status ltr_accuracy(const double* truth, const double* pred, size_t rows, size_t cols, double* out) {
  return guarded("ltr_accuracy", [&] {
    need(out, "out");
    *out = ltr::accuracy(from_row_major(truth, rows, cols), from_row_major(pred, rows, cols));
    return LTR_OK;
  });
}

ltr_status ltr_correlation_ratio(const double* layer_outputs, size_t n_layers, size_t m, double* out) {
  return guarded("ltr_correlation_ratio", [&] {
    need(out, "out");
    const auto r = ltr::correlation_ratio(from_row_major(layer_outputs, n_layers, m));
    if (!r) {
      g_last_error = "ltr_correlation_ratio: zero total variance, ratio undefined";
      return LTR_ERR_UNDEFINED;
    }
    *out = *r;
    return LTR_OK;
  });
}

ltr_status ltr_csv_read(const char* path, const char* prefix, double** values, size_t* rows, size_t* cols) {
  return guarded("ltr_csv_read", [&] {
    need(path, "path");
    need(values, "values");
    need(rows, "rows");
    need(cols, "cols");
    const ltr::io::CsvTable table = ltr::io::read_csv(path);
    const Matrix m = prefix ? ltr::io::select_columns(table, prefix) : table.values;
    *rows = static_cast<size_t>(m.rows());
    *cols = static_cast<size_t>(m.cols());
    *values = static_cast<double*>(std::malloc(std::max<size_t>(1, static_cast<size_t>(m.size())) * sizeof(double)));
    if (!*values) throw std::bad_alloc();
    to_row_major(m, *values, static_cast<size_t>(m.size()));
    return LTR_OK;
  });
}

ltr_status ltr_csv_write(const char* path, const char* const* header, size_t cols, const double* values, size_t rows) {
  return guarded("ltr_csv_write", [&] {
    need(path, "path");
    if (cols > 0) need(header, "header");
    ltr::io::CsvTable table;
    for (size_t j = 0; j < cols; ++j) {
      need(header[j], "header entry");
      table.header.emplace_back(header[j]);
    }
    table.values = from_row_major(values, rows, cols);
    ltr::io::write_csv(path, table);
    return LTR_OK;
  });
}

ltr_status ltr_write_text(const char* path, const char* text) {
  return guarded("ltr_write_text", [&] {
    need(path, "path");
    need(text, "text");
    ltr::io::write_text_atomic(path, text);
    return LTR_OK;
  });
}

void ltr_buffer_free(double* values) { std::free(values); }

ltr_status ltr_gradcheck(const char* options_json, char** report_json) {
  return guarded("ltr_gradcheck", [&] {
    const json j = parse_json(options_json, "gradcheck options");
    ltr::GradcheckOptions o;
    try {
      o.degrees = j.value("degrees", o.degrees);
      o.outputs = j.value("outputs", o.outputs);
      o.rows = j.value("rows", o.rows);
      o.rank = j.value("rank", o.rank);
      o.n = j.value("n", o.n);
      o.step = j.value("step", o.step);
      o.tolerance = j.value("tolerance", o.tolerance);
      o.seed = j.value("seed", o.seed);
      if (j.contains("corrupt")) {
        const auto g = j.at("corrupt").get<std::string>();
        if (g == "lambda") o.corrupt = ltr::ParamGroup::kLambda;
        else if (g == "P") o.corrupt = ltr::ParamGroup::kP;
        else if (g == "Q") o.corrupt = ltr::ParamGroup::kQ;
        else ltr::fail(ErrorCode::kInvalidArgument, "corrupt must be lambda, P or Q");
      }
    } catch (const json::exception& e) {
      ltr::fail(ErrorCode::kInvalidArgument, std::string("bad gradcheck options: ") + e.what());
    }
    const ltr::GradcheckReport report = ltr::run_gradcheck(o);
    json entries = json::array();
    std::string first_failure;
    for (const auto& e : report.entries) {
      entries.push_back(json{{"shape", e.shape},
                             {"group", ltr::to_string(e.group)},
                             {"max_rel_error", e.max_rel_error},
                             {"worst_index", e.worst_index},
                             {"passed", e.passed}});
      if (!e.passed && first_failure.empty())
        first_failure = std::string(ltr::to_string(e.group)) + " at " + e.shape + ", index " + e.worst_index;
    }
    if (report_json)
      *report_json = dup_string(
          json{{"passed", report.passed}, {"tolerance", o.tolerance}, {"entries", std::move(entries)}}.dump(2));
    if (!report.passed) {
      g_last_error = "ltr_gradcheck: gradient mismatch in " + first_failure;
      return LTR_ERR_CHECK_FAILED;
    }
    return LTR_OK;
  });
}

ltr_status ltr_benchmark(const char* config_json, char** csv, char** plot_json) {
  return guarded("ltr_benchmark", [&] {
    need(config_json, "config");
    const ltr::BenchmarkConfig config = ltr::benchmark_from_json(parse_json(config_json, "benchmark config"));
    const ltr::BenchmarkResult result = ltr::run_benchmark(config);
    if (csv) *csv = dup_string(ltr::benchmark_csv(result));
    if (plot_json) *plot_json = dup_string(ltr::benchmark_plot_json(config, result).dump(2));
    return LTR_OK;
  });
}

}  // extern "C"
