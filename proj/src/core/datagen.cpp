/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/datagen.hpp"

#include <cmath>
#include <random>

namespace ltr {

void GeneratorSpec::validate() const {
  require(n >= 1 && degree >= 1 && rank >= 1 && m >= 1, ErrorCode::kInvalidArgument,
          "generator counts (n, degree, rank, m) must all be positive");
  require(noise >= 0.0 && std::isfinite(noise), ErrorCode::kInvalidArgument, "noise level must be >= 0");
}

LtrModel generate_model(const GeneratorSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  LtrModel model(spec.degree, spec.rank, spec.n, 1);
  for (auto& p : model.P) p = Matrix::NullaryExpr(spec.rank, spec.n, [&] { return normal(rng); });
  model.lambda = Vector::NullaryExpr(spec.rank, [&] { return normal(rng); });
  model.Q.setOnes();
  return model;
}

Dataset sample_dataset(const LtrModel& model, Index m, double noise, std::uint64_t seed) {
  model.validate();
  require(m >= 1, ErrorCode::kInvalidArgument, "sample size must be positive");
  require(noise >= 0.0 && std::isfinite(noise), ErrorCode::kInvalidArgument, "noise level must be >= 0");
  require(!model.multi_view(), ErrorCode::kInvalidArgument, "sampling needs a single-view model");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix X = Matrix::NullaryExpr(m, model.input_dim(), [&] { return normal(rng); });
  Matrix Y = forward_batch(model, {X}).Yhat;
  if (noise > 0.0) {
    for (Index j = 0; j < Y.cols(); ++j) {
      const double mean = Y.col(j).mean();
      const double sd = m > 1 ? std::sqrt((Y.col(j).array() - mean).square().sum() / static_cast<double>(m - 1)) : 0.0;
      for (Index i = 0; i < m; ++i) Y(i, j) += noise * sd * normal(rng);
    }
  }
  return Dataset(std::move(X), std::move(Y));
}

QuadraticFunction quadratic_from_string(const std::string& name) {
  if (name == "xy") return QuadraticFunction::kXy;
  if (name == "sq_diff") return QuadraticFunction::kSqDiff;
  if (name == "diff_sq") return QuadraticFunction::kDiffSq;
  fail(ErrorCode::kInvalidArgument, "unknown function '" + name + "' (expected xy, sq_diff or diff_sq)");
}

const char* to_string(QuadraticFunction f) {
  switch (f) {
    case QuadraticFunction::kXy: return "xy";
    case QuadraticFunction::kSqDiff: return "sq_diff";
    case QuadraticFunction::kDiffSq: return "diff_sq";
  }
  return "?";
}

double quadratic_value(QuadraticFunction f, double x, double y) {
  switch (f) {
    case QuadraticFunction::kXy: return x * y;
    case QuadraticFunction::kSqDiff: return x * x - 2.0 * x * y + y * y;
    case QuadraticFunction::kDiffSq: return x * x - y * y;
  }
  return 0.0;
}

Dataset quadratic_dataset(QuadraticFunction f, Index m, std::uint64_t seed) {
  require(m >= 1, ErrorCode::kInvalidArgument, "sample size must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix X = Matrix::NullaryExpr(m, 2, [&] { return normal(rng); });
  Matrix Y(m, 1);
  for (Index i = 0; i < m; ++i) Y(i, 0) = quadratic_value(f, X(i, 0), X(i, 1));
  return Dataset(std::move(X), std::move(Y));
}

}  // namespace ltr
