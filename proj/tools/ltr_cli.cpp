/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ltr/ltr.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(ltr_status s) {
  switch (s) {
    case LTR_OK: return kExitOk;
    case LTR_ERR_INVALID_ARGUMENT:
    case LTR_ERR_DIMENSION:
    case LTR_ERR_IO: return kExitUsage;
    default: return kExitCheck;
  }
}

void check(ltr_status s) {
  if (s != LTR_OK) throw CliError{exit_code_for(s), ltr_last_error()};
}

[[noreturn]] void usage_error(const std::string& msg) { throw CliError{kExitUsage, msg}; }

struct ModelDeleter {
  void operator()(ltr_model* m) const { ltr_model_free(m); }
};
struct DatasetDeleter {
  void operator()(ltr_dataset* d) const { ltr_dataset_free(d); }
};
struct StringDeleter {
  void operator()(char* s) const { ltr_string_free(s); }
};
using ModelPtr = std::unique_ptr<ltr_model, ModelDeleter>;
using DatasetPtr = std::unique_ptr<ltr_dataset, DatasetDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Table {
  std::vector<double> values;  // row-major
  std::size_t rows = 0;
  std::size_t cols = 0;
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

Table read_table(const std::string& path, const char* prefix) {
  if (!fs::exists(path)) usage_error("no such file: " + path);
  double* buf = nullptr;
  Table t;
  check(ltr_csv_read(path.c_str(), prefix, &buf, &t.rows, &t.cols));
  t.values.assign(buf, buf + t.rows * t.cols);
  ltr_buffer_free(buf);
  return t;
}

void write_table(const std::string& path, const std::string& column_prefix, const Table& t) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < t.cols; ++j) names.push_back(column_prefix + std::to_string(j + 1));
  std::vector<const char*> header;
  for (const auto& n : names) header.push_back(n.c_str());
  check(ltr_csv_write(path.c_str(), header.data(), t.cols, t.values.data(), t.rows));
}

void write_text(const std::string& path, const std::string& text) { check(ltr_write_text(path.c_str(), text.c_str())); }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_error("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    usage_error("malformed JSON in '" + path + "': " + e.what());
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) usage_error("cannot create output directory '" + dir + "'");
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

// Options shared by every subcommand.
struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON run configuration");
  cmd->add_option("--seed", c.seed, "Random seed (overrides the config)");
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
}

json config_or_empty(const Common& c) { return c.config.empty() ? json::object() : load_json_file(c.config); }

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  Common common;
  std::optional<long> n, degree, rank, m, m_test;
  std::optional<double> noise;
  std::string function;
};

int cmd_generate(const GenerateArgs& a) {
  json cfg = config_or_empty(a.common);
  json gen = cfg.value("generator", json::object());
  if (a.n) gen["n"] = *a.n;
  if (a.degree) gen["degree"] = *a.degree;
  if (a.rank) gen["rank"] = *a.rank;
  if (a.m) gen["m"] = *a.m;
  if (a.noise) gen["noise"] = *a.noise;
  if (a.common.seed) gen["seed"] = *a.common.seed;
  std::string function = a.function.empty() ? cfg.value("function", std::string()) : a.function;

  const long n = gen.value("n", 10L), degree = gen.value("degree", 3L), rank = gen.value("rank", 3L);
  const long m = gen.value("m", 1000L);
  const double noise = gen.value("noise", 0.0);
  const std::uint64_t seed = gen.value("seed", std::uint64_t{0});
  const long m_test = a.m_test ? *a.m_test : cfg.value("m_test", m);
  if (n < 1 || degree < 1 || rank < 1 || m < 1 || m_test < 0) usage_error("generator counts must be positive");

  ensure_dir(a.common.out);
  json manifest{{"command", "generate"}, {"m_test", m_test}};
  DatasetPtr train, test;
  ltr_dataset* raw = nullptr;
  if (!function.empty()) {
    check(ltr_quadratic_dataset(function.c_str(), static_cast<std::size_t>(m), seed, &raw));
    train.reset(raw);
    if (m_test > 0) {
      check(ltr_quadratic_dataset(function.c_str(), static_cast<std::size_t>(m_test), seed + 1, &raw));
      test.reset(raw);
    }
    manifest["function"] = function;
    manifest["generator"] = json{{"m", m}, {"seed", seed}};
  } else {
    ltr_model* truth = nullptr;
    check(ltr_generate_model(static_cast<std::size_t>(n), static_cast<std::size_t>(degree),
                             static_cast<std::size_t>(rank), seed, &truth));
    ModelPtr true_model(truth);
    check(ltr_sample_dataset(truth, static_cast<std::size_t>(m), noise, seed + 1, &raw));
    train.reset(raw);
    if (m_test > 0) {
      check(ltr_sample_dataset(truth, static_cast<std::size_t>(m_test), noise, seed + 2, &raw));
      test.reset(raw);
    }
    check(ltr_model_save(truth, join(a.common.out, "true_model.json").c_str()));
    manifest["generator"] = json{{"n", n}, {"degree", degree}, {"rank", rank}, {"m", m}, {"noise", noise}, {"seed", seed}};
    manifest["true_model"] = "true_model.json";
  }
  check(ltr_dataset_save_csv(train.get(), join(a.common.out, "train.csv").c_str()));
  json files{{"train", "train.csv"}};
  if (test) {
    check(ltr_dataset_save_csv(test.get(), join(a.common.out, "test.csv").c_str()));
    files["test"] = "test.csv";
  }
  manifest["files"] = files;
  write_text(join(a.common.out, "manifest.json"), manifest.dump(2) + "\n");
  std::cout << "wrote " << join(a.common.out, "train.csv") << (test ? " and test.csv" : "") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct DataArgs {
  std::string data;
  std::vector<std::string> views;
  std::string targets;
};

void add_data_options(CLI::App* cmd, DataArgs& d, const char* data_help) {
  cmd->add_option("--data", d.data, data_help);
  cmd->add_option("--views", d.views, "Per-factor view CSVs (multi-view), in factor order");
  cmd->add_option("--targets", d.targets, "Target CSV for multi-view data");
}

DatasetPtr load_dataset(DataArgs d, const json& data_cfg) {
  if (d.data.empty()) d.data = data_cfg.value("train", std::string());
  if (d.views.empty()) d.views = data_cfg.value("views", std::vector<std::string>{});
  if (d.targets.empty()) d.targets = data_cfg.value("targets", std::string());

  ltr_dataset* raw = nullptr;
  if (!d.views.empty()) {
    if (d.targets.empty()) usage_error("multi-view data needs --targets");
    for (const auto& p : d.views)
      if (!fs::exists(p)) usage_error("no such file: " + p);
    if (!fs::exists(d.targets)) usage_error("no such file: " + d.targets);
    std::vector<const char*> paths;
    for (const auto& p : d.views) paths.push_back(p.c_str());
    check(ltr_dataset_load_views(paths.data(), paths.size(), d.targets.c_str(), &raw));
  } else {
    if (d.data.empty()) usage_error("no dataset given (use --data or --views/--targets)");
    if (!fs::exists(d.data)) usage_error("no such file: " + d.data);
    check(ltr_dataset_load_csv(d.data.c_str(), &raw));
  }
  return DatasetPtr(raw);
}

struct TrainArgs {
  Common common;
  DataArgs data;
  std::optional<long> degree, rank, epochs, batch;
  std::optional<double> lr;
  std::string mode, link;
  std::vector<long> blocks;
  bool homogenize = false;
};

int cmd_train(const TrainArgs& a) {
  const json cfg = config_or_empty(a.common);
  json train = cfg.value("train", json::object());
  if (a.degree) train["degree"] = *a.degree;
  if (a.rank) train["rank"] = *a.rank;
  if (a.epochs) train["epochs"] = *a.epochs;
  if (a.batch) train["batch_size"] = *a.batch;
  if (a.lr) train["learning_rate"] = *a.lr;
  if (a.common.seed) train["seed"] = *a.common.seed;
  if (!a.mode.empty()) train["mode"] = a.mode;
  if (!a.link.empty()) train["link"] = a.link;
  if (!a.blocks.empty()) train["rank_blocks"] = a.blocks;
  if (a.homogenize) train["homogenize"] = true;

  DatasetPtr data = load_dataset(a.data, cfg.value("data", json::object()));
  ensure_dir(a.common.out);

  ltr_model* raw = nullptr;
  char* report = nullptr;
  check(ltr_fit(data.get(), train.dump().c_str(), &raw, &report));
  ModelPtr model(raw);
  StringPtr report_text(report);
  check(ltr_model_save(model.get(), join(a.common.out, "model.json").c_str()));
  write_text(join(a.common.out, "report.json"), std::string(report_text.get()) + "\n");
  std::cout << "wrote " << join(a.common.out, "model.json") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- predict

// Inputs for prediction need no targets; a zero target column fills the slot.
DatasetPtr views_only(const std::vector<std::string>& paths) {
  DatasetPtr data;
  for (const auto& p : paths) {
    const Table x = read_table(p, "x");
    if (!data) {
      const std::vector<double> zeros(x.rows, 0.0);
      ltr_dataset* raw = nullptr;
      check(ltr_dataset_create(x.values.data(), x.rows, x.cols, zeros.data(), 1, &raw));
      data.reset(raw);
    } else {
      check(ltr_dataset_add_view(data.get(), x.values.data(), x.rows, x.cols));
    }
  }
  return data;
}

struct PredictArgs {
  Common common;
  std::string model;
  std::string input;
  DataArgs data;
};

int cmd_predict(const PredictArgs& a) {
  const json cfg = config_or_empty(a.common);
  const std::string model_path = a.model.empty() ? cfg.value("model", std::string()) : a.model;
  if (model_path.empty()) usage_error("predict needs --model");
  if (!fs::exists(model_path)) usage_error("no such file: " + model_path);
  ltr_model* raw = nullptr;
  check(ltr_model_load(model_path.c_str(), &raw));
  ModelPtr model(raw);

  std::size_t degree = 0, rank = 0, input_cols = 0, n_y = 0;
  int homogenized = 0, logistic = 0;
  check(ltr_model_shape(model.get(), &degree, &rank, &input_cols, &n_y, &homogenized, &logistic));
  ensure_dir(a.common.out);
  const std::string out_path = join(a.common.out, "predictions.csv");

  Table pred;
  pred.cols = n_y;
  if (!a.data.views.empty()) {
    DatasetPtr data = views_only(a.data.views);
    check(ltr_dataset_shape(data.get(), &pred.rows, nullptr, nullptr));
    pred.values.resize(pred.rows * pred.cols);
    check(ltr_model_predict_dataset(model.get(), data.get(), pred.values.data(), pred.values.size()));
  } else {
    const std::string input = a.input.empty() ? cfg.value("input", std::string()) : a.input;
    if (input.empty()) usage_error("predict needs --input");
    const Table x = read_table(input, "x");
    if (x.rows > 0 && x.cols != input_cols)
      usage_error("dimension mismatch: model expects " + std::to_string(input_cols) + " feature columns, found " +
                  std::to_string(x.cols) + " in " + input);
    pred.rows = x.rows;
    pred.values.resize(pred.rows * pred.cols);
    if (x.rows > 0)
      check(ltr_model_predict(model.get(), x.values.data(), x.rows, x.cols, pred.values.data(), pred.values.size()));
  }
  write_table(out_path, "yhat", pred);
  std::cout << "wrote " << pred.rows << " predictions to " << out_path << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  Common common;
  std::string predictions, truth, task = "regression";
  long top_k = 5;
  double threshold = 0.5;
};

json number_or_null(ltr_status s, double v) {
  if (s == LTR_ERR_UNDEFINED) return nullptr;
  check(s);
  return v;
}

int cmd_evaluate(const EvaluateArgs& a) {
  if (a.predictions.empty() || a.truth.empty()) usage_error("evaluate needs --predictions and --truth");
  Table pred = read_table(a.predictions, "yhat");
  if (pred.cols == 0) pred = read_table(a.predictions, nullptr);
  const Table truth = read_table(a.truth, "y");
  if (pred.rows != truth.rows)
    usage_error("row mismatch: " + std::to_string(pred.rows) + " predictions vs " + std::to_string(truth.rows) +
                " truth rows");
  if (pred.cols != truth.cols)
    usage_error("column mismatch: " + std::to_string(pred.cols) + " prediction vs " + std::to_string(truth.cols) +
                " truth columns");

  json metrics{{"task", a.task}, {"rows", truth.rows}};
  if (a.task == "regression") {
    double rmse = 0.0;
    check(ltr_rmse(truth.values.data(), pred.values.data(), truth.values.size(), &rmse));
    json per_output = json::array();
    for (std::size_t j = 0; j < truth.cols; ++j) {
      std::vector<double> y(truth.rows), yhat(truth.rows);
      for (std::size_t i = 0; i < truth.rows; ++i) {
        y[i] = truth.at(i, j);
        yhat[i] = pred.at(i, j);
      }
      double r = 0.0;
      const ltr_status s = ltr_pearson(y.data(), yhat.data(), y.size(), &r);
      per_output.push_back(number_or_null(s, r));
    }
    metrics["pearson"] = truth.cols == 1 ? per_output[0] : per_output;
    metrics["rmse"] = rmse;
  } else if (a.task == "classification" || a.task == "multilabel") {
    Table bin = pred;
    for (std::size_t i = 0; i < pred.rows; ++i) {
      if (a.task == "classification") {
        for (std::size_t j = 0; j < pred.cols; ++j) bin.values[i * pred.cols + j] = pred.at(i, j) >= a.threshold ? 1.0 : 0.0;
      } else {
        std::vector<std::size_t> idx(pred.cols);
        for (std::size_t j = 0; j < pred.cols; ++j) idx[j] = j;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return pred.at(i, l) > pred.at(i, r); });
        for (std::size_t j = 0; j < pred.cols; ++j) bin.values[i * pred.cols + j] = 0.0;
        for (std::size_t k = 0; k < std::min<std::size_t>(static_cast<std::size_t>(a.top_k), pred.cols); ++k)
          bin.values[i * pred.cols + idx[k]] = 1.0;
      }
    }
    double acc = 0.0, f1 = 0.0;
    check(ltr_accuracy(truth.values.data(), bin.values.data(), truth.rows, truth.cols, &acc));
    check(ltr_f1_multilabel(truth.values.data(), bin.values.data(), truth.rows, truth.cols, &f1));
    metrics["accuracy"] = acc;
    metrics["f1_micro"] = f1;
    if (a.task == "multilabel") metrics["top_k"] = a.top_k;
    else metrics["threshold"] = a.threshold;
  } else {
    usage_error("unknown task '" + a.task + "' (expected regression, classification or multilabel)");
  }
  ensure_dir(a.common.out);
  const std::string text = metrics.dump(2) + "\n";
  write_text(join(a.common.out, "metrics.json"), text);
  std::cout << text;
  return kExitOk;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkArgs {
  Common common;
  std::optional<long> degree, rank, epochs, batch;
  std::optional<double> lr;
};

int cmd_benchmark(const BenchmarkArgs& a) {
  if (a.common.config.empty()) usage_error("benchmark needs --config");
  json cfg = load_json_file(a.common.config);
  json bench = cfg.contains("benchmark") ? cfg["benchmark"] : cfg;
  if (a.common.seed) bench["seed"] = *a.common.seed;
  json& train = bench["train"];
  if (train.is_null()) train = json::object();
  if (a.epochs) train["epochs"] = *a.epochs;
  if (a.batch) train["batch_size"] = *a.batch;
  if (a.lr) train["learning_rate"] = *a.lr;
  json& gen = bench["generator"];
  if (gen.is_null()) gen = json::object();
  if (a.degree) gen["degree"] = *a.degree;
  if (a.rank) gen["rank"] = *a.rank;
  if (!bench.contains("threads")) {
    if (const char* env = std::getenv("LTR_NUM_THREADS")) {
      try {
        bench["threads"] = std::max(1, std::stoi(env));
      } catch (const std::exception&) {
        usage_error(std::string("LTR_NUM_THREADS must be an integer, got '") + env + "'");
      }
    }
  }

  ensure_dir(a.common.out);
  char* csv = nullptr;
  char* plot = nullptr;
  check(ltr_benchmark(bench.dump().c_str(), &csv, &plot));
  StringPtr csv_text(csv), plot_text(plot);
  write_text(join(a.common.out, "results.csv"), csv_text.get());
  write_text(join(a.common.out, "plot.json"), std::string(plot_text.get()) + "\n");
  std::cout << csv_text.get();
  return kExitOk;
}

// ---------------------------------------------------------------- gradcheck

struct GradcheckArgs {
  Common common;
  std::string corrupt;
};

int cmd_gradcheck(const GradcheckArgs& a) {
  json opts = config_or_empty(a.common);
  if (a.common.seed) opts["seed"] = *a.common.seed;
  if (!a.corrupt.empty()) opts["corrupt"] = a.corrupt;
  char* report = nullptr;
  const ltr_status s = ltr_gradcheck(opts.dump().c_str(), &report);
  if (s != LTR_OK && s != LTR_ERR_CHECK_FAILED) {
    if (report) ltr_string_free(report);
    check(s);
  }
  const std::string message = ltr_last_error();
  StringPtr report_text(report);
  const json r = json::parse(report_text.get());
  for (const auto& e : r["entries"]) {
    std::cout << (e["passed"].get<bool>() ? "ok   " : "FAIL ") << e["shape"].get<std::string>() << "  "
              << e["group"].get<std::string>() << "  max_rel_error=" << e["max_rel_error"].get<double>();
    if (!e["passed"].get<bool>()) std::cout << "  at " << e["worst_index"].get<std::string>();
    std::cout << "\n";
  }
  if (!a.common.config.empty() || a.common.out != ".") {
    ensure_dir(a.common.out);
    write_text(join(a.common.out, "gradcheck.json"), r.dump(2) + "\n");
  }
  if (s == LTR_ERR_CHECK_FAILED) {
    std::cerr << "gradcheck failed: " << message << "\n";
    return kExitCheck;
  }
  std::cout << "gradcheck passed (tolerance " << r["tolerance"].get<double>() << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent tensor reconstruction: polynomial learning with rank-one tensor terms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ltr_version()));

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write synthetic train/test CSVs and a manifest");
  add_common(g, gen.common);
  g->add_option("--n", gen.n, "Input variables");
  g->add_option("--degree", gen.degree, "Polynomial degree");
  g->add_option("--rank", gen.rank, "Polynomial rank");
  g->add_option("--m", gen.m, "Training rows");
  g->add_option("--m-test", gen.m_test, "Test rows (0 for none; default m)");
  g->add_option("--noise", gen.noise, "Noise std as a multiple of the target std");
  g->add_option("--function", gen.function, "Fixed two-variable quadratic: xy, sq_diff or diff_sq");

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Fit a model and write model.json and report.json");
  add_common(t, tr.common);
  add_data_options(t, tr.data, "Training CSV (x1..xn, y1..yk)");
  t->add_option("--degree", tr.degree, "Degree");
  t->add_option("--rank", tr.rank, "Rank");
  t->add_option("--epochs", tr.epochs, "Epochs");
  t->add_option("--batch", tr.batch, "Mini-batch size");
  t->add_option("--lr", tr.lr, "ADAM learning rate");
  t->add_option("--mode", tr.mode, "rank_wise, joint or layered");
  t->add_option("--link", tr.link, "identity or logistic");
  t->add_option("--blocks", tr.blocks, "Rank blocks for layered mode");
  t->add_flag("--homogenize", tr.homogenize, "Append a constant input column");

  PredictArgs pr;
  auto* p = app.add_subcommand("predict", "Write predictions.csv for an input CSV");
  add_common(p, pr.common);
  p->add_option("--model", pr.model, "Model JSON");
  p->add_option("--input", pr.input, "Input CSV (x1..xn; other columns ignored)");
  p->add_option("--views", pr.data.views, "Per-factor view CSVs (multi-view)");

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score predictions against truth and write metrics.json");
  add_common(e, ev.common);
  e->add_option("--predictions", ev.predictions, "Predictions CSV (yhat1..)");
  e->add_option("--truth", ev.truth, "Truth CSV (y1..)");
  e->add_option("--task", ev.task, "regression, classification or multilabel")->capture_default_str();
  e->add_option("--top-k", ev.top_k, "Labels kept per row for multilabel")->capture_default_str();
  e->add_option("--threshold", ev.threshold, "Probability threshold for classification")->capture_default_str();

  BenchmarkArgs be;
  auto* b = app.add_subcommand("benchmark", "Run a one-parameter sweep and write results.csv and plot.json");
  add_common(b, be.common);
  b->add_option("--degree", be.degree, "Base degree");
  b->add_option("--rank", be.rank, "Base rank");
  b->add_option("--epochs", be.epochs, "Epochs");
  b->add_option("--batch", be.batch, "Mini-batch size");
  b->add_option("--lr", be.lr, "ADAM learning rate");

  GradcheckArgs gc;
  auto* c = app.add_subcommand("gradcheck", "Compare analytic gradients with central differences");
  add_common(c, gc.common);
  c->add_option("--corrupt", gc.corrupt, "Test hook: negate the analytic gradient of lambda, P or Q")
      ->check(CLI::IsMember({"lambda", "P", "Q"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*t) return cmd_train(tr);
    if (*p) return cmd_predict(pr);
    if (*e) return cmd_evaluate(ev);
    if (*b) return cmd_benchmark(be);
    if (*c) return cmd_gradcheck(gc);
  } catch (const CliError& err) {
    std::cerr << "error: " << err.message << "\n";
    return err.exit_code;
  } catch (const json::exception& err) {
    std::cerr << "error: bad configuration value: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
