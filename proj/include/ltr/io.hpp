/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ltr/datagen.hpp"
#include "ltr/model.hpp"
#include "ltr/training.hpp"

namespace ltr::io {

inline constexpr int kModelSchemaVersion = 1;

struct CsvTable {
  std::vector<std::string> header;
  Matrix values;  // rows x header.size()
};

/// Reads a headered numeric CSV. A zero-byte file yields an empty table.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& origin = "<memory>");
std::string format_csv(const CsvTable& table);
/// Writes `path` via a temporary file and rename.
void write_csv(const std::string& path, const CsvTable& table);

/// Columns whose name starts with `prefix` followed by digits, in file order.
Matrix select_columns(const CsvTable& table, const std::string& prefix);

/// Single-view dataset from x1..xn and y1..yn_y columns.
Dataset read_dataset(const std::string& path);
/// One CSV per view (x columns) plus a CSV with the y columns.
Dataset read_multiview(const std::vector<std::string>& view_paths, const std::string& target_path);
CsvTable dataset_table(const Dataset& data);
void write_dataset(const std::string& path, const Dataset& data);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

nlohmann::json model_to_json(const LtrModel& model);
LtrModel model_from_json(const nlohmann::json& j);
void save_model(const std::string& path, const LtrModel& model);
LtrModel load_model(const std::string& path);

nlohmann::json config_to_json(const TrainConfig& config);
/// Missing fields keep their defaults; unknown fields are rejected.
TrainConfig config_from_json(const nlohmann::json& j);

nlohmann::json generator_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const FitReport& report);

std::string read_text(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace ltr::io
