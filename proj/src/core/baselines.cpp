/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/baselines.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace ltr {

Matrix poly_kernel(const Matrix& X1, const Matrix& X2, double bias, Index degree) {
  require(X1.cols() == X2.cols(), ErrorCode::kDimensionMismatch,
          "kernel inputs have " + std::to_string(X1.cols()) + " and " + std::to_string(X2.cols()) + " columns");
  require(degree >= 1, ErrorCode::kInvalidArgument, "kernel degree must be >= 1");
  Matrix K = X1 * X2.transpose();
  K.array() += bias;
  return K.array().pow(static_cast<double>(degree)).matrix();
}

KrrModel krr_fit(const Dataset& data, double bias, Index degree, double ridge) {
  data.validate();
  require(!data.multi_view(), ErrorCode::kInvalidArgument, "KRR takes a single input view");
  require(data.outputs() == 1, ErrorCode::kInvalidArgument, "KRR supports scalar targets only");
  require(data.rows() <= KrrModel::kMaxRows, ErrorCode::kInvalidArgument,
          "KRR dense solve is capped at " + std::to_string(KrrModel::kMaxRows) + " rows, got " +
              std::to_string(data.rows()));
  require(ridge >= 0.0, ErrorCode::kInvalidArgument, "ridge constant must be >= 0");

  KrrModel model;
  model.X_train = data.views.front();
  model.bias = bias;
  model.degree = degree;
  model.ridge = ridge;
  Matrix K = poly_kernel(model.X_train, model.X_train, bias, degree);
  K.diagonal().array() += ridge;

  Eigen::LDLT<Matrix> ldlt(K);
  require(ldlt.info() == Eigen::Success && ldlt.rcond() > 1e-14, ErrorCode::kNumeric,
          "KRR system is numerically singular (rcond " + std::to_string(ldlt.rcond()) +
              "); increase the ridge constant");
  model.alpha = ldlt.solve(data.Y.col(0));
  require(model.alpha.allFinite(), ErrorCode::kNumeric, "KRR solve produced non-finite coefficients");
  return model;
}

Vector krr_predict(const KrrModel& model, const Matrix& X) {
  return poly_kernel(X, model.X_train, model.bias, model.degree) * model.alpha;
}

LinearModel linreg_fit(const Dataset& data) {
  data.validate();
  require(!data.multi_view(), ErrorCode::kInvalidArgument, "linear regression takes a single input view");
  require(data.outputs() == 1, ErrorCode::kInvalidArgument, "linear regression supports scalar targets only");
  const Matrix Xh = homogenize(data.views.front());
  Matrix gram = Xh.transpose() * Xh;
  gram.diagonal().array() += 1e-10;
  LinearModel model;
  model.weights = gram.ldlt().solve(Xh.transpose() * data.Y.col(0));
  return model;
}

Vector linreg_predict(const LinearModel& model, const Matrix& X) {
  require(X.cols() + 1 == model.weights.size(), ErrorCode::kDimensionMismatch,
          "linear model expects " + std::to_string(model.weights.size() - 1) + " input columns");
  return homogenize(X) * model.weights;
}

namespace {

// A[d] for d = 0..degree, each m x rank, via Newton's identities on the
// power sums D^(r)_it = sum_j (x_ij p_tj)^r.
std::vector<Matrix> anova_tables(const Matrix& X, const Matrix& P, Index degree) {
  std::vector<Matrix> power_sums(static_cast<std::size_t>(degree + 1));
  for (Index r = 1; r <= degree; ++r) {
    const double e = static_cast<double>(r);
    power_sums[static_cast<std::size_t>(r)] = X.array().pow(e).matrix() * P.array().pow(e).matrix().transpose();
  }
  std::vector<Matrix> A(static_cast<std::size_t>(degree + 1));
  A[0] = Matrix::Ones(X.rows(), P.rows());
  for (Index d = 1; d <= degree; ++d) {
    Matrix acc = Matrix::Zero(X.rows(), P.rows());
    for (Index r = 1; r <= d; ++r) {
      const double sign = (r % 2 == 1) ? 1.0 : -1.0;
      acc += sign * A[static_cast<std::size_t>(d - r)].cwiseProduct(power_sums[static_cast<std::size_t>(r)]);
    }
    A[static_cast<std::size_t>(d)] = acc / static_cast<double>(d);
  }
  return A;
}

}  // namespace

Vector fm_forward(const Matrix& X, const Matrix& P, Index degree, bool cumulative) {
  require(X.cols() == P.cols(), ErrorCode::kDimensionMismatch,
          "FM inputs have " + std::to_string(X.cols()) + " columns, P has " + std::to_string(P.cols()));
  require(degree >= 1, ErrorCode::kInvalidArgument, "FM degree must be >= 1");
  const auto A = anova_tables(X, P, degree);
  if (!cumulative) return A.back().rowwise().sum();
  Vector out = Vector::Zero(X.rows());
  for (Index d = 1; d <= degree; ++d) out += A[static_cast<std::size_t>(d)].rowwise().sum();
  return out;
}

Matrix fm_fit(const Dataset& data, const FmFitConfig& config) {
  data.validate();
  require(data.outputs() == 1 && !data.multi_view(), ErrorCode::kInvalidArgument,
          "FM fit takes one view and a scalar target");
  require(config.rank >= 1 && config.degree >= 1 && config.steps >= 1, ErrorCode::kInvalidArgument,
          "invalid FM fit configuration");
  const Matrix& X = data.views.front();
  const Vector y = data.Y.col(0);
  const Index m = X.rows();
  const Index n = X.cols();
  const Index deg = config.degree;

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, config.init_scale);
  Matrix P = Matrix::NullaryExpr(config.rank, n, [&] { return normal(rng); });
  Matrix m1 = Matrix::Zero(config.rank, n), m2 = Matrix::Zero(config.rank, n);
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;

  for (int step = 1; step <= config.steps; ++step) {
    const auto A = anova_tables(X, P, deg);
    const Vector resid = A.back().rowwise().sum() - y;
    // dA_deg(z)/dz_j = sum_r (-z_j)^r A_{deg-1-r}(z), with z = x * p_t
    Matrix grad = Matrix::Zero(config.rank, n);
    for (Index t = 0; t < config.rank; ++t) {
      for (Index j = 0; j < n; ++j) {
        double g = 0.0;
        for (Index i = 0; i < m; ++i) {
          const double z = X(i, j) * P(t, j);
          double dz = 0.0, power = 1.0;
          for (Index r = 0; r < deg; ++r) {
            dz += power * A[static_cast<std::size_t>(deg - 1 - r)](i, t);
            power *= -z;
          }
          g += resid(i) * dz * X(i, j);
        }
        grad(t, j) = 2.0 * g / static_cast<double>(m);
      }
    }
    m1 = b1 * m1 + (1.0 - b1) * grad;
    m2 = b2 * m2 + (1.0 - b2) * grad.cwiseAbs2();
    const double c1 = 1.0 - std::pow(b1, step), c2 = 1.0 - std::pow(b2, step);
    P.array() -= config.learning_rate * (m1.array() / c1) / ((m2.array() / c2).sqrt() + eps);
  }
  return P;
}

}  // namespace ltr
