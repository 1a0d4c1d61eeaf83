/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace ltr::io {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& cell, const std::string& origin, std::size_t line) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (!cell.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  require(ec == std::errc() && ptr == end && !cell.empty(), ErrorCode::kIo,
          origin + ":" + std::to_string(line) + ": cannot parse '" + cell + "' as a number");
  return v;
}

bool has_prefix_index(const std::string& name, const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  for (std::size_t i = prefix.size(); i < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return false;
  return true;
}

Matrix json_matrix(const json& rows, Index expect_cols, const char* what) {
  require(rows.is_array(), ErrorCode::kIo, std::string(what) + " must be an array of rows");
  Matrix m(static_cast<Index>(rows.size()), expect_cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].is_array() && static_cast<Index>(rows[i].size()) == expect_cols, ErrorCode::kIo,
            std::string(what) + " row " + std::to_string(i) + " has the wrong length");
    for (Index j = 0; j < expect_cols; ++j) m(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open '" + tmp.string() + "' for writing");
    out << text;
    out.flush();
    require(static_cast<bool>(out), ErrorCode::kIo, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::kIo, "cannot move output into place at '" + path + "'");
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  require(ec == std::errc(), ErrorCode::kIo, "number formatting failed");
  return std::string(buf, ptr);
}

CsvTable parse_csv(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    require(cells.size() == table.header.size(), ErrorCode::kIo,
            origin + ":" + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                " fields, found " + std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c, origin, line_no));
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(table.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return table;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path), path); }

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j) out += ',';
    out += table.header[j];
  }
  if (!table.header.empty()) out += '\n';
  for (Index i = 0; i < table.values.rows(); ++i) {
    for (Index j = 0; j < table.values.cols(); ++j) {
      if (j) out += ',';
      out += format_double(table.values(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const CsvTable& table) { write_text_atomic(path, format_csv(table)); }

Matrix select_columns(const CsvTable& table, const std::string& prefix) {
  std::vector<Index> cols;
  for (std::size_t j = 0; j < table.header.size(); ++j)
    if (has_prefix_index(table.header[j], prefix)) cols.push_back(static_cast<Index>(j));
  Matrix out(table.values.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = table.values.col(cols[k]);
  return out;
}

Dataset read_dataset(const std::string& path) {
  const CsvTable table = read_csv(path);
  Matrix X = select_columns(table, "x");
  Matrix Y = select_columns(table, "y");
  require(X.cols() >= 1, ErrorCode::kIo, path + ": no feature columns (x1, x2, ...)");
  require(Y.cols() >= 1, ErrorCode::kIo, path + ": no target columns (y1, y2, ...)");
  return Dataset(std::move(X), std::move(Y));
}

Dataset read_multiview(const std::vector<std::string>& view_paths, const std::string& target_path) {
  require(!view_paths.empty(), ErrorCode::kIo, "multi-view dataset needs at least one view file");
  std::vector<Matrix> views;
  for (const auto& p : view_paths) {
    Matrix X = select_columns(read_csv(p), "x");
    require(X.cols() >= 1, ErrorCode::kIo, p + ": no feature columns (x1, x2, ...)");
    views.push_back(std::move(X));
  }
  Matrix Y = select_columns(read_csv(target_path), "y");
  require(Y.cols() >= 1, ErrorCode::kIo, target_path + ": no target columns (y1, y2, ...)");
  Dataset d(std::move(views), std::move(Y));
  d.validate();
  return d;
}

CsvTable dataset_table(const Dataset& data) {
  require(data.views.size() == 1, ErrorCode::kInvalidArgument, "only single-view datasets fit in one CSV");
  const Matrix& X = data.views.front();
  CsvTable t;
  for (Index j = 0; j < X.cols(); ++j) t.header.push_back("x" + std::to_string(j + 1));
  for (Index j = 0; j < data.Y.cols(); ++j) t.header.push_back("y" + std::to_string(j + 1));
  t.values.resize(X.rows(), X.cols() + data.Y.cols());
  t.values << X, data.Y;
  return t;
}

void write_dataset(const std::string& path, const Dataset& data) { write_csv(path, dataset_table(data)); }

json model_to_json(const LtrModel& model) {
  model.validate();
  json P = json::array();
  for (const auto& p : model.P) {
    json flat = json::array();
    for (Index t = 0; t < p.rows(); ++t)
      for (Index j = 0; j < p.cols(); ++j) flat.push_back(p(t, j));
    P.push_back(std::move(flat));
  }
  json Q = json::array();
  for (Index t = 0; t < model.Q.rows(); ++t) {
    json row = json::array();
    for (Index k = 0; k < model.Q.cols(); ++k) row.push_back(model.Q(t, k));
    Q.push_back(std::move(row));
  }
  json lambda = json::array();
  for (Index t = 0; t < model.rank(); ++t) lambda.push_back(model.lambda(t));
  json dims = json::array();
  for (Index d = 0; d < model.degree(); ++d) dims.push_back(model.input_dim(d));

  json j = json::object();
  j["schema_version"] = kModelSchemaVersion;
  j["n_d"] = model.degree();
  j["n_t"] = model.rank();
  j["n"] = model.input_dim(0);
  j["n_y"] = model.outputs();
  j["homogenized"] = model.homogenized;
  j["link"] = to_string(model.link);
  j["view_dims"] = std::move(dims);
  j["lambda"] = std::move(lambda);
  j["P"] = std::move(P);
  j["Q"] = std::move(Q);
  return j;
}

LtrModel model_from_json(const json& j) {
  try {
    require(j.value("schema_version", 0) == kModelSchemaVersion, ErrorCode::kIo,
            "unsupported model schema_version (expected " + std::to_string(kModelSchemaVersion) + ")");
    const Index nd = j.at("n_d").get<Index>();
    const Index nt = j.at("n_t").get<Index>();
    const Index n = j.at("n").get<Index>();
    const Index ny = j.at("n_y").get<Index>();
    require(nd >= 1 && nt >= 1 && n >= 1 && ny >= 1, ErrorCode::kIo, "model dimensions must be positive");
    std::vector<Index> dims(static_cast<std::size_t>(nd), n);
    if (j.contains("view_dims")) dims = j.at("view_dims").get<std::vector<Index>>();
    require(static_cast<Index>(dims.size()) == nd, ErrorCode::kIo, "view_dims must have n_d entries");

    LtrModel model;
    model.homogenized = j.value("homogenized", false);
    model.link = link_from_string(j.value("link", std::string("identity")));
    const auto& P = j.at("P");
    require(P.is_array() && static_cast<Index>(P.size()) == nd, ErrorCode::kIo, "P must hold n_d factor arrays");
    for (Index d = 0; d < nd; ++d) {
      const auto& flat = P[static_cast<std::size_t>(d)];
      const Index w = dims[static_cast<std::size_t>(d)];
      require(flat.is_array() && static_cast<Index>(flat.size()) == nt * w, ErrorCode::kIo,
              "P[" + std::to_string(d) + "] must hold n_t*n values in row-major order");
      Matrix p(nt, w);
      for (Index t = 0; t < nt; ++t)
        for (Index c = 0; c < w; ++c) p(t, c) = flat[static_cast<std::size_t>(t * w + c)].get<double>();
      model.P.push_back(std::move(p));
    }
    model.Q = json_matrix(j.at("Q"), ny, "Q");
    require(model.Q.rows() == nt, ErrorCode::kIo, "Q must have n_t rows");
    const auto lambda = j.at("lambda").get<std::vector<double>>();
    require(static_cast<Index>(lambda.size()) == nt, ErrorCode::kIo, "lambda must have n_t entries");
    model.lambda = Eigen::Map<const Vector>(lambda.data(), nt);
    model.validate();
    return model;
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const std::string& path, const LtrModel& model) {
  write_text_atomic(path, model_to_json(model).dump(2) + "\n");
}

LtrModel load_model(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, path + ": " + e.what());
  }
  return model_from_json(j);
}

json config_to_json(const TrainConfig& c) {
  return json{{"degree", c.degree},
              {"rank", c.rank},
              {"c_p", c.c_p},
              {"c_q", c.c_q},
              {"learning_rate", c.learning_rate},
              {"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"adam_beta1", c.adam_beta1},
              {"adam_beta2", c.adam_beta2},
              {"adam_eps", c.adam_eps},
              {"mode", to_string(c.mode)},
              {"rank_blocks", c.rank_blocks},
              {"link", to_string(c.link)},
              {"seed", c.seed},
              {"shuffle", c.shuffle},
              {"homogenize", c.homogenize},
              {"refit_scales", c.refit_scales}};
}

TrainConfig config_from_json(const json& j) {
  require(j.is_object(), ErrorCode::kInvalidArgument, "training config must be a JSON object");
  static const std::set<std::string> known{"degree",     "rank",       "c_p",        "c_q",       "learning_rate",
                                           "epochs",     "batch_size", "adam_beta1", "adam_beta2", "adam_eps",
                                           "mode",       "rank_blocks", "link",      "seed",      "shuffle",
                                           "homogenize", "refit_scales"};
  for (const auto& item : j.items())
    require(known.count(item.key()) > 0, ErrorCode::kInvalidArgument, "unknown training field '" + item.key() + "'");
  TrainConfig c;
  try {
    c.degree = j.value("degree", c.degree);
    c.rank = j.value("rank", c.rank);
    c.c_p = j.value("c_p", c.c_p);
    c.c_q = j.value("c_q", c.c_q);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.epochs = j.value("epochs", c.epochs);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.adam_beta1 = j.value("adam_beta1", c.adam_beta1);
    c.adam_beta2 = j.value("adam_beta2", c.adam_beta2);
    c.adam_eps = j.value("adam_eps", c.adam_eps);
    c.mode = fit_mode_from_string(j.value("mode", std::string(to_string(c.mode))));
    c.rank_blocks = j.value("rank_blocks", c.rank_blocks);
    c.link = link_from_string(j.value("link", std::string(to_string(c.link))));
    c.seed = j.value("seed", c.seed);
    c.shuffle = j.value("shuffle", c.shuffle);
    c.homogenize = j.value("homogenize", c.homogenize);
    c.refit_scales = j.value("refit_scales", c.refit_scales);
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad training config: ") + e.what());
  }
  return c;
}

json generator_to_json(const GeneratorSpec& s) {
  return json{{"n", s.n}, {"degree", s.degree}, {"rank", s.rank}, {"m", s.m}, {"noise", s.noise}, {"seed", s.seed}};
}

GeneratorSpec generator_from_json(const json& j) {
  require(j.is_object(), ErrorCode::kInvalidArgument, "generator spec must be a JSON object");
  GeneratorSpec s;
  try {
    s.n = j.value("n", s.n);
    s.degree = j.value("degree", s.degree);
    s.rank = j.value("rank", s.rank);
    s.m = j.value("m", s.m);
    s.noise = j.value("noise", s.noise);
    s.seed = j.value("seed", s.seed);
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad generator spec: ") + e.what());
  }
  return s;
}

json report_to_json(const FitReport& r) {
  json phases = json::array();
  for (const auto& p : r.phases) {
    phases.push_back(json{{"first_term", p.first_term},
                          {"terms", p.terms},
                          {"epoch_loss", p.epoch_loss},
                          {"residual_norm", p.residual_norm},
                          {"eta2", p.eta2 ? json(*p.eta2) : json(nullptr)},
                          {"seconds", p.seconds}});
  }
  std::vector<double> lambda(r.lambda.data(), r.lambda.data() + r.lambda.size());
  return json{{"mode", to_string(r.mode)},
              {"link", to_string(r.link)},
              {"initial_residual_norm", r.initial_residual_norm},
              {"deflation_events", r.phases.size()},
              {"phases", std::move(phases)},
              {"seconds", r.seconds},
              {"lambda", std::move(lambda)}};
}

}  // namespace ltr::io
