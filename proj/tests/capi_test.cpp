/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Exercises the shared library through its C header only.

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ltr/ltr.h"

namespace {

using nlohmann::json;

std::vector<double> normals(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::vector<double> v(count);
  for (auto& x : v) x = N(rng);
  return v;
}

struct Scratch {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("ltr_capi_" + std::to_string(std::random_device{}()));
  Scratch() { std::filesystem::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  std::string file(const char* name) const { return (dir / name).string(); }
};

TEST(CApi, StatusStringsAndVersion) {
  EXPECT_STREQ(ltr_status_string(LTR_OK), "ok");
  EXPECT_GT(std::strlen(ltr_version()), 0u);
  EXPECT_GT(std::strlen(ltr_status_string(LTR_ERR_DIMENSION)), 0u);
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(ltr_dataset_create(nullptr, 2, 2, nullptr, 1, nullptr), LTR_ERR_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(ltr_last_error()), 0u);
  ltr_model_free(nullptr);
  ltr_dataset_free(nullptr);
  ltr_string_free(nullptr);
}

TEST(CApi, FitPredictSaveLoad) {
  const std::size_t m = 400;
  std::vector<double> x = normals(m * 2, 1), y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = x[2 * i] * x[2 * i + 1];
  ltr_dataset* data = nullptr;
  ASSERT_EQ(ltr_dataset_create(x.data(), m, 2, y.data(), 1, &data), LTR_OK);

  ltr_model* model = nullptr;
  char* report = nullptr;
  ASSERT_EQ(ltr_fit(data, R"({"degree":2,"rank":2,"batch_size":50,"seed":3})", &model, &report), LTR_OK)
      << ltr_last_error();
  const json r = json::parse(report);
  EXPECT_EQ(r["mode"], "rank_wise");
  EXPECT_EQ(r["phases"].size(), 2u);
  ltr_string_free(report);

  std::vector<double> pred(m);
  ASSERT_EQ(ltr_model_predict(model, x.data(), m, 2, pred.data(), pred.size()), LTR_OK);
  double r_value = 0.0;
  ASSERT_EQ(ltr_pearson(y.data(), pred.data(), m, &r_value), LTR_OK);
  EXPECT_GE(r_value, 0.99);

  std::vector<double> via_dataset(m);
  ASSERT_EQ(ltr_model_predict_dataset(model, data, via_dataset.data(), m), LTR_OK);
  EXPECT_EQ(pred, via_dataset);

  Scratch s;
  ASSERT_EQ(ltr_model_save(model, s.file("m.json").c_str()), LTR_OK);
  ltr_model* loaded = nullptr;
  ASSERT_EQ(ltr_model_load(s.file("m.json").c_str(), &loaded), LTR_OK);
  std::vector<double> again(m);
  ASSERT_EQ(ltr_model_predict(loaded, x.data(), m, 2, again.data(), m), LTR_OK);
  EXPECT_EQ(pred, again);

  std::size_t degree = 0, rank = 0, cols = 0, n_y = 0;
  int homogenized = -1, logistic = -1;
  ASSERT_EQ(ltr_model_shape(loaded, &degree, &rank, &cols, &n_y, &homogenized, &logistic), LTR_OK);
  EXPECT_EQ(degree, 2u);
  EXPECT_EQ(rank, 2u);
  EXPECT_EQ(cols, 2u);
  EXPECT_EQ(n_y, 1u);
  EXPECT_EQ(homogenized, 0);
  EXPECT_EQ(logistic, 0);

  EXPECT_EQ(ltr_model_predict(model, x.data(), m, 3, pred.data(), m), LTR_ERR_DIMENSION);
  EXPECT_EQ(ltr_model_predict(model, x.data(), m, 2, pred.data(), m - 1), LTR_ERR_DIMENSION);

  ltr_model_free(loaded);
  ltr_model_free(model);
  ltr_dataset_free(data);
}

TEST(CApi, ModelJsonStringRoundTrip) {
  ltr_model* model = nullptr;
  ASSERT_EQ(ltr_generate_model(3, 2, 2, 5, &model), LTR_OK);
  char* text = nullptr;
  ASSERT_EQ(ltr_model_to_json(model, &text), LTR_OK);
  ltr_model* back = nullptr;
  ASSERT_EQ(ltr_model_from_json(text, &back), LTR_OK);
  ltr_string_free(text);
  const std::vector<double> x = normals(30, 6);
  std::vector<double> a(10), b(10);
  ASSERT_EQ(ltr_model_predict(model, x.data(), 10, 3, a.data(), 10), LTR_OK);
  ASSERT_EQ(ltr_model_predict(back, x.data(), 10, 3, b.data(), 10), LTR_OK);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ltr_model_from_json("{not json", &back), LTR_ERR_IO);
  ltr_model_free(back);
  ltr_model_free(model);
}

TEST(CApi, InvalidConfigIsReported) {
  std::vector<double> x = normals(20, 7), y(10, 1.0);
  ltr_dataset* data = nullptr;
  ASSERT_EQ(ltr_dataset_create(x.data(), 10, 2, y.data(), 1, &data), LTR_OK);
  ltr_model* model = nullptr;
  EXPECT_EQ(ltr_fit(data, R"({"rank":0})", &model, nullptr), LTR_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(model, nullptr);
  EXPECT_EQ(ltr_fit(data, R"({"bogus":1})", &model, nullptr), LTR_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ltr_last_error()).find("bogus"), std::string::npos);
  ltr_dataset_free(data);
}

TEST(CApi, MultiViewDataset) {
  const std::size_t m = 50;
  std::vector<double> a = normals(m * 2, 8), b = normals(m * 3, 9), y = normals(m, 10);
  ltr_dataset* data = nullptr;
  ASSERT_EQ(ltr_dataset_create(a.data(), m, 2, y.data(), 1, &data), LTR_OK);
  ASSERT_EQ(ltr_dataset_add_view(data, b.data(), m, 3), LTR_OK);
  EXPECT_EQ(ltr_dataset_add_view(data, b.data(), m - 1, 3), LTR_ERR_DIMENSION);
  std::size_t rows = 0, views = 0, n_y = 0, cols = 0;
  ASSERT_EQ(ltr_dataset_shape(data, &rows, &views, &n_y), LTR_OK);
  EXPECT_EQ(views, 2u);
  ASSERT_EQ(ltr_dataset_view_cols(data, 1, &cols), LTR_OK);
  EXPECT_EQ(cols, 3u);
  std::vector<double> copy(m * 3);
  ASSERT_EQ(ltr_dataset_view(data, 1, copy.data(), copy.size()), LTR_OK);
  EXPECT_EQ(copy, b);
  ltr_model* model = nullptr;
  ASSERT_EQ(ltr_fit(data, R"({"degree":2,"rank":1,"epochs":2})", &model, nullptr), LTR_OK) << ltr_last_error();
  std::vector<double> pred(m);
  EXPECT_EQ(ltr_model_predict_dataset(model, data, pred.data(), m), LTR_OK);
  ltr_model_free(model);
  ltr_dataset_free(data);
}

TEST(CApi, Metrics) {
  const double y[] = {1, 2, 3, 4}, yhat[] = {1, 2, 2, 4}, flat[] = {5, 5, 5, 5};
  double out = 0.0;
  ASSERT_EQ(ltr_pearson(y, yhat, 4, &out), LTR_OK);
  EXPECT_NEAR(out, 0.9233805168766388, 1e-15);
  EXPECT_EQ(ltr_pearson(y, flat, 4, &out), LTR_ERR_UNDEFINED);
  const double zero[] = {0, 0}, other[] = {3, 4};
  ASSERT_EQ(ltr_rmse(zero, other, 2, &out), LTR_OK);
  EXPECT_NEAR(out, std::sqrt(12.5), 1e-15);
  const double truth[] = {1, 1, 0, 0, 1, 0}, pred[] = {1, 0, 1, 0, 1, 0};
  ASSERT_EQ(ltr_f1_multilabel(truth, pred, 2, 3, &out), LTR_OK);
  EXPECT_NEAR(out, 2.0 / 3.0, 1e-15);
  ASSERT_EQ(ltr_accuracy(truth, pred, 2, 3, &out), LTR_OK);
  EXPECT_NEAR(out, 0.5, 1e-15);
  const double layers[] = {0, 0, 1, 1};
  ASSERT_EQ(ltr_correlation_ratio(layers, 2, 2, &out), LTR_OK);
  EXPECT_NEAR(out, 1.0, 1e-15);
}

TEST(CApi, CsvFiles) {
  Scratch s;
  const char* header[] = {"x1", "x2", "y1"};
  const double values[] = {1, 2, 3, 4.5, -5, 6};
  ASSERT_EQ(ltr_csv_write(s.file("t.csv").c_str(), header, 3, values, 2), LTR_OK);
  double* buf = nullptr;
  std::size_t rows = 0, cols = 0;
  ASSERT_EQ(ltr_csv_read(s.file("t.csv").c_str(), "x", &buf, &rows, &cols), LTR_OK);
  EXPECT_EQ(rows, 2u);
  EXPECT_EQ(cols, 2u);
  EXPECT_EQ(buf[2], 4.5);
  ltr_buffer_free(buf);
  EXPECT_EQ(ltr_csv_read(s.file("missing.csv").c_str(), nullptr, &buf, &rows, &cols), LTR_ERR_IO);

  ltr_dataset* data = nullptr;
  ASSERT_EQ(ltr_dataset_load_csv(s.file("t.csv").c_str(), &data), LTR_OK);
  std::vector<double> y(2);
  ASSERT_EQ(ltr_dataset_targets(data, y.data(), 2), LTR_OK);
  EXPECT_EQ(y, (std::vector<double>{3, 6}));
  ltr_dataset_free(data);
}

TEST(CApi, SyntheticData) {
  ltr_dataset* t3 = nullptr;
  ASSERT_EQ(ltr_quadratic_dataset("xy", 4, 1, &t3), LTR_OK);
  std::vector<double> x(8), y(4);
  ASSERT_EQ(ltr_dataset_view(t3, 0, x.data(), 8), LTR_OK);
  ASSERT_EQ(ltr_dataset_targets(t3, y.data(), 4), LTR_OK);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(y[i], x[2 * i] * x[2 * i + 1]);
  ltr_dataset_free(t3);
  EXPECT_EQ(ltr_quadratic_dataset("cube", 4, 1, &t3), LTR_ERR_INVALID_ARGUMENT);
  ltr_model* model = nullptr;
  EXPECT_EQ(ltr_generate_model(3, 2, 0, 1, &model), LTR_ERR_INVALID_ARGUMENT);
}

TEST(CApi, GradcheckAndCorruption) {
  char* report = nullptr;
  ASSERT_EQ(ltr_gradcheck(nullptr, &report), LTR_OK) << ltr_last_error();
  const json ok = json::parse(report);
  ltr_string_free(report);
  EXPECT_TRUE(ok["passed"].get<bool>());
  bool saw_degree_one = false;
  for (const auto& e : ok["entries"])
    if (e["shape"].get<std::string>().find("n_d=1 ") != std::string::npos) saw_degree_one = true;
  EXPECT_TRUE(saw_degree_one);

  ASSERT_EQ(ltr_gradcheck(R"({"corrupt":"Q","degrees":[2]})", &report), LTR_ERR_CHECK_FAILED);
  EXPECT_NE(std::string(ltr_last_error()).find("mismatch in Q"), std::string::npos) << ltr_last_error();
  ltr_string_free(report);
}

TEST(CApi, BenchmarkProducesTidyRows) {
  char* csv = nullptr;
  char* plot = nullptr;
  const char* config = R"({"variable":"noise","values":[0,0.5],"generator":{"n":4,"degree":2,"rank":2,"m":400},
                           "learners":["ltr","lr","krr"],"seed":3})";
  ASSERT_EQ(ltr_benchmark(config, &csv, &plot), LTR_OK) << ltr_last_error();
  const std::string text(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "learner,variable,value,metric,mean,stderr,status");
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 1u + 2 * 3 * 3);
  const json p = json::parse(plot);
  EXPECT_EQ(p["series"]["ltr"]["pearson"]["mean"].size(), 2u);
  ltr_string_free(csv);
  ltr_string_free(plot);
  EXPECT_EQ(ltr_benchmark(R"({"variable":"colour","values":[1]})", &csv, &plot), LTR_ERR_INVALID_ARGUMENT);
}

}  // namespace
