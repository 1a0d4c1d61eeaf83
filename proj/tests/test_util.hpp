/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "ltr/model.hpp"

namespace ltr::testing {

inline Matrix randn(Index rows, Index cols, std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> N(0.0, sd);
  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = N(rng);
  return M;
}

inline LtrModel random_model(Index degree, Index rank, Index n, Index n_y, std::mt19937_64& rng) {
  LtrModel m(degree, rank, n, n_y);
  for (auto& P : m.P) P = randn(rank, n, rng);
  m.Q = randn(rank, n_y, rng);
  m.lambda = randn(rank, 1, rng);
  return m;
}

// Relative error with an absolute floor so exact zeros compare sanely.
inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Per-example reference: sum_t lambda_t prod_d <p_d^t, x_d> q^t.
inline double loop_forward(const LtrModel& m, const std::vector<Vector>& x_per_factor, Index out) {
  double total = 0.0;
  for (Index t = 0; t < m.rank(); ++t) {
    double prod = m.lambda(t);
    for (Index d = 0; d < m.degree(); ++d) {
      const Vector& x = x_per_factor[static_cast<std::size_t>(d)];
      double dot = 0.0;
      for (Index j = 0; j < x.size(); ++j) dot += m.P[static_cast<std::size_t>(d)](t, j) * x(j);
      prod *= dot;
    }
    total += prod * m.Q(t, out);
  }
  return total;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("ltr_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace ltr::testing
