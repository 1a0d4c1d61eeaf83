/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ltr/datagen.hpp"
#include "ltr/io.hpp"
#include "test_util.hpp"

namespace ltr {
namespace {

using testing::randn;
using testing::random_model;
using testing::TempDir;

TEST(Csv, ParsesHeaderAndValues) {
  const io::CsvTable t = io::parse_csv("x1,x2,y1\n1,2.5,-3e-2\n\n4, 5 ,6\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"x1", "x2", "y1"}));
  ASSERT_EQ(t.values.rows(), 2);
  EXPECT_EQ(t.values(0, 2), -0.03);
  EXPECT_EQ(t.values(1, 1), 5.0);
}

TEST(Csv, RaggedRowNamesLine) {
  try {
    io::parse_csv("x1,y1\n1,2\n3\n", "data.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("data.csv:3"), std::string::npos) << e.what();
  }
}

TEST(Csv, NonNumericCell) { EXPECT_THROW(io::parse_csv("x1,y1\n1,abc\n"), Error); }

TEST(Csv, ShortestRoundTripFormatting) {
  std::mt19937_64 rng(1);
  const Matrix M = randn(20, 3, rng);
  const io::CsvTable t{{"a", "b", "c"}, M};
  const io::CsvTable back = io::parse_csv(io::format_csv(t));
  EXPECT_TRUE((back.values.array() == M.array()).all());
  EXPECT_EQ(io::format_double(0.1), "0.1");
}

TEST(Csv, SelectsPrefixedColumnsOnly) {
  const io::CsvTable t = io::parse_csv("x1,x2,xtra,y1,id\n1,2,3,4,5\n");
  const Matrix X = io::select_columns(t, "x");
  ASSERT_EQ(X.cols(), 2);
  EXPECT_EQ(X(0, 1), 2.0);
  EXPECT_EQ(io::select_columns(t, "y").cols(), 1);
}

TEST(Dataset, FileRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(2);
  const Dataset data(randn(10, 3, rng), randn(10, 2, rng));
  io::write_dataset(dir.file("d.csv"), data);
  const Dataset back = io::read_dataset(dir.file("d.csv"));
  EXPECT_TRUE((back.views[0].array() == data.views[0].array()).all());
  EXPECT_TRUE((back.Y.array() == data.Y.array()).all());
  EXPECT_EQ(io::read_text(dir.file("d.csv")).substr(0, 15), "x1,x2,x3,y1,y2\n");
}

TEST(Dataset, MultiViewFiles) {
  TempDir dir;
  std::mt19937_64 rng(3);
  const Matrix A = randn(5, 2, rng), B = randn(5, 4, rng), Y = randn(5, 1, rng);
  io::write_csv(dir.file("a.csv"), {{"x1", "x2"}, A});
  io::write_csv(dir.file("b.csv"), {{"x1", "x2", "x3", "x4"}, B});
  io::write_csv(dir.file("y.csv"), {{"y1"}, Y});
  const Dataset d = io::read_multiview({dir.file("a.csv"), dir.file("b.csv")}, dir.file("y.csv"));
  ASSERT_EQ(d.views.size(), 2u);
  EXPECT_EQ(d.views[1].cols(), 4);
  EXPECT_TRUE((d.Y.array() == Y.array()).all());
}

TEST(Dataset, MissingFileIsIoError) {
  try {
    io::read_dataset("/nonexistent/none.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ModelJson, RoundTripPreservesPredictions) {
  TempDir dir;
  std::mt19937_64 rng(4);
  LtrModel m = random_model(3, 4, 5, 2, rng);
  m.homogenized = true;
  io::save_model(dir.file("m.json"), m);
  const LtrModel back = io::load_model(dir.file("m.json"));
  EXPECT_TRUE(back.homogenized);
  const Matrix X = randn(30, 4, rng);
  const Matrix a = predict(m, {X}), b = predict(back, {X});
  EXPECT_TRUE((a.array() == b.array()).all());
}

TEST(ModelJson, Layout) {
  LtrModel m(2, 1, 2, 1);
  m.P[0] << 1, 2;
  m.P[1] << 3, 4;
  m.lambda << 0.5;
  m.Q << 1;
  const nlohmann::json j = io::model_to_json(m);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["n_d"], 2);
  EXPECT_EQ(j["n_t"], 1);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["n_y"], 1);
  EXPECT_EQ(j["link"], "identity");
  EXPECT_EQ(j["P"][1], nlohmann::json({3.0, 4.0}));
  EXPECT_EQ(j["Q"], nlohmann::json({{1.0}}));
}

TEST(ModelJson, RejectsWrongSizes) {
  std::mt19937_64 rng(5);
  nlohmann::json j = io::model_to_json(random_model(2, 2, 3, 1, rng));
  j["lambda"] = {1.0};
  EXPECT_THROW(io::model_from_json(j), Error);
  j = io::model_to_json(random_model(2, 2, 3, 1, rng));
  j["schema_version"] = 99;
  EXPECT_THROW(io::model_from_json(j), Error);
}

TEST(ConfigJson, RoundTripAndUnknownKeys) {
  TrainConfig c;
  c.degree = 3;
  c.rank = 4;
  c.mode = FitMode::kLayered;
  c.rank_blocks = {1, 3};
  c.link = Link::kIdentity;
  c.seed = 12;
  const TrainConfig back = io::config_from_json(io::config_to_json(c));
  EXPECT_EQ(back.degree, 3);
  EXPECT_EQ(back.rank_blocks, c.rank_blocks);
  EXPECT_EQ(back.mode, FitMode::kLayered);
  EXPECT_EQ(back.seed, 12u);
  EXPECT_THROW(io::config_from_json({{"learning_speed", 1}}), Error);
}

TEST(ConfigJson, DefaultsMatchProtocol) {
  const TrainConfig c = io::config_from_json(nlohmann::json::object());
  EXPECT_EQ(c.batch_size, 500);
  EXPECT_EQ(c.epochs, 10);
  EXPECT_EQ(c.c_p, 1e-5);
  EXPECT_EQ(c.c_q, 1e-5);
}

TEST(GeneratorJson, RoundTrip) {
  GeneratorSpec s;
  s.n = 7;
  s.noise = 0.25;
  s.seed = 9;
  const GeneratorSpec back = io::generator_from_json(io::generator_to_json(s));
  EXPECT_EQ(back.n, 7);
  EXPECT_EQ(back.noise, 0.25);
  EXPECT_EQ(back.seed, 9u);
}

TEST(Text, AtomicWriteLeavesNoTemporary) {
  TempDir dir;
  io::write_text_atomic(dir.file("out.txt"), "hello\n");
  EXPECT_EQ(io::read_text(dir.file("out.txt")), "hello\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 1u);
}

}  // namespace
}  // namespace ltr
