/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>

#include "ltr/model.hpp"

namespace ltr {

/// K_ij = (<X1_i, X2_j> + bias)^degree
Matrix poly_kernel(const Matrix& X1, const Matrix& X2, double bias, Index degree);

struct KrrModel {
  static constexpr Index kMaxRows = 20000;

  Matrix X_train;
  Vector alpha;
  double bias = 1.0;
  Index degree = 2;
  double ridge = 1e-3;
};

/// Solves (K + ridge * I) alpha = y. Throws kNumeric when the system is
/// numerically singular.
KrrModel krr_fit(const Dataset& data, double bias, Index degree, double ridge);
Vector krr_predict(const KrrModel& model, const Matrix& X);

/// Least-squares weights on homogenized inputs; the last entry is the intercept.
struct LinearModel {
  Vector weights;
};

LinearModel linreg_fit(const Dataset& data);
Vector linreg_predict(const LinearModel& model, const Matrix& X);

/// Factorization-machine (ANOVA kernel) prediction sum_t A_degree(x * p_t),
/// evaluated with the power-sum recursion. With `cumulative` the degrees
/// 1..degree are summed instead.
Vector fm_forward(const Matrix& X, const Matrix& P, Index degree, bool cumulative = false);

struct FmFitConfig {
  Index rank = 2;
  Index degree = 2;
  int steps = 500;
  double learning_rate = 0.05;
  double init_scale = 0.5;
  std::uint64_t seed = 0;
};

/// Full-batch ADAM on the mean squared error of fm_forward. Returns P.
Matrix fm_fit(const Dataset& data, const FmFitConfig& config);

}  // namespace ltr
