/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "ltr/baselines.hpp"
#include "ltr/datagen.hpp"
#include "ltr/metrics.hpp"
#include "test_util.hpp"

namespace ltr {
namespace {

using testing::randn;
using testing::rel;

TEST(PolyKernel, UnitVectors) {
  Matrix a(1, 2), b(1, 2);
  a << 1, 0;
  b << 0, 1;
  EXPECT_DOUBLE_EQ(poly_kernel(a, a, 0.0, 2)(0, 0), 1.0);
  for (Index degree = 1; degree <= 4; ++degree) EXPECT_EQ(poly_kernel(a, b, 0.0, degree)(0, 0), 0.0);
}

TEST(PolyKernel, MatchesLoop) {
  std::mt19937_64 rng(1);
  const Matrix X = randn(5, 3, rng);
  const Matrix K = poly_kernel(X, X, 1.0, 3);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) {
      double dot = 1.0;
      for (Index k = 0; k < 3; ++k) dot += X(i, k) * X(j, k);
      EXPECT_LT(rel(K(i, j), dot * dot * dot), 1e-12);
    }
}

TEST(PolyKernel, SymmetricPositiveSemidefinite) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix X = randn(12, 4, rng);
    const Matrix K = poly_kernel(X, X, 0.5 * trial, 1 + trial % 3);
    EXPECT_EQ((K - K.transpose()).norm(), 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(K);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8 * std::max(1.0, eig.eigenvalues().maxCoeff()));
  }
}

TEST(Krr, InterpolatesWithoutRidge) {
  std::mt19937_64 rng(3);
  const Matrix X = randn(15, 4, rng);
  const Dataset data(X, randn(15, 1, rng));
  const KrrModel m = krr_fit(data, 1.0, 2, 0.0);
  EXPECT_LT(rmse(Vector(data.Y.col(0)), krr_predict(m, X)), 1e-8);
}

TEST(Krr, DuplicateRowsWithRidge) {
  std::mt19937_64 rng(4);
  Matrix X = randn(10, 2, rng);
  X.row(5) = X.row(0);
  Matrix Y = randn(10, 1, rng);
  EXPECT_NO_THROW(krr_fit(Dataset(X, Y), 1.0, 2, 1e-3));
}

TEST(Krr, SingularWithoutRidgeIsReported) {
  std::mt19937_64 rng(5);
  Matrix X = randn(6, 2, rng);
  X.row(3) = X.row(1);
  try {
    krr_fit(Dataset(X, randn(6, 1, rng)), 1.0, 2, 0.0);
    FAIL() << "expected a numeric error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumeric);
  }
}

TEST(Krr, QuadraticFunctions) {
  for (auto f : {QuadraticFunction::kXy, QuadraticFunction::kSqDiff, QuadraticFunction::kDiffSq}) {
    const Dataset data = quadratic_dataset(f, 1000, 6);
    const CvResult cv = cross_validate(data, 5, 7, [](const Dataset& tr, const std::vector<Matrix>& te) {
      return Matrix(krr_predict(krr_fit(tr, 1.0, 2, 1e-3), te.front()));
    });
    EXPECT_GE(cv.pearson.mean, 0.99) << to_string(f);
  }
}

TEST(LinReg, ExactlyLinearData) {
  std::mt19937_64 rng(8);
  const Matrix X = randn(200, 3, rng);
  Vector w(3);
  w << 1.5, -2, 0.25;
  const Dataset data(X, (X * w).array() + 4.0);
  const Matrix Xt = randn(100, 3, rng);
  const auto r = pearson((Xt * w).array() + 4.0, linreg_predict(linreg_fit(data), Xt));
  ASSERT_TRUE(r);
  EXPECT_GE(*r, 0.999);
}

TEST(LinReg, ProductTargetIsUncorrelated) {
  const Dataset train = quadratic_dataset(QuadraticFunction::kXy, 5000, 9);
  const Dataset test = quadratic_dataset(QuadraticFunction::kXy, 5000, 10);
  const auto r = pearson(test.Y.col(0), linreg_predict(linreg_fit(train), test.views[0]));
  ASSERT_TRUE(r);
  EXPECT_LE(std::abs(*r), 0.1);
}

TEST(LinReg, ConstantTargetHasZeroSlopes) {
  std::mt19937_64 rng(11);
  const LinearModel m = linreg_fit(Dataset(randn(50, 3, rng), Matrix::Constant(50, 1, 2.5)));
  ASSERT_EQ(m.weights.size(), 4);
  EXPECT_LT(m.weights.head(3).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(m.weights(3), 2.5, 1e-8);
}

TEST(FmForward, SecondElementarySymmetric) {
  Matrix X(1, 2), P(1, 2);
  X << 2, 3;
  P << 1, 1;
  EXPECT_DOUBLE_EQ(fm_forward(X, P, 2)(0), 6.0);
}

TEST(FmForward, DegreeOneIsLinear) {
  std::mt19937_64 rng(12);
  const Matrix X = randn(7, 4, rng), P = randn(3, 4, rng);
  const Vector expected = (X * P.transpose()).rowwise().sum();
  EXPECT_LT((fm_forward(X, P, 1) - expected).norm(), 1e-12);
}

// Sum over strictly increasing index tuples j_1 < ... < j_d.
double brute_anova(const Vector& x, const Matrix& P, Index degree) {
  const Index n = x.size();
  double total = 0.0;
  for (Index t = 0; t < P.rows(); ++t) {
    std::vector<Index> idx(static_cast<std::size_t>(degree));
    std::iota(idx.begin(), idx.end(), Index{0});
    while (true) {
      double prod = 1.0;
      for (Index j : idx) prod *= x(j) * P(t, j);
      total += prod;
      Index k = degree - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - degree + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (Index r = k + 1; r < degree; ++r) idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r - 1)] + 1;
    }
  }
  return total;
}

TEST(FmForward, MatchesBruteForceTuples) {
  std::mt19937_64 rng(13);
  for (Index degree : {2, 3}) {
    const Matrix X = randn(20, 4, rng), P = randn(3, 4, rng);
    const Vector f = fm_forward(X, P, degree);
    for (Index i = 0; i < 20; ++i) EXPECT_LT(rel(f(i), brute_anova(X.row(i).transpose(), P, degree)), 1e-10);
  }
}

TEST(FmForward, CumulativeSumsDegrees) {
  std::mt19937_64 rng(14);
  const Matrix X = randn(5, 4, rng), P = randn(2, 4, rng);
  const Vector expected = fm_forward(X, P, 1) + fm_forward(X, P, 2) + fm_forward(X, P, 3);
  EXPECT_LT((fm_forward(X, P, 3, true) - expected).norm(), 1e-10);
}

TEST(FmForward, ColumnPermutationInvariance) {
  std::mt19937_64 rng(15);
  const Matrix X = randn(10, 5, rng), P = randn(2, 5, rng);
  std::vector<Index> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix Xp(10, 5), Pp(2, 5);
  for (Index j = 0; j < 5; ++j) {
    Xp.col(j) = X.col(perm[static_cast<std::size_t>(j)]);
    Pp.col(j) = P.col(perm[static_cast<std::size_t>(j)]);
  }
  EXPECT_LT((fm_forward(X, P, 3) - fm_forward(Xp, Pp, 3)).norm(), 1e-10);
}

double fm_test_pearson(QuadraticFunction f) {
  const Dataset train = quadratic_dataset(f, 1000, 16), test = quadratic_dataset(f, 1000, 17);
  FmFitConfig c;
  c.seed = 18;
  const Matrix P = fm_fit(train, c);
  return pearson(test.Y.col(0), fm_forward(test.views[0], P, 2)).value_or(0.0);
}

TEST(FmFit, SymmetryLimitsExpressiveness) {
  EXPECT_GE(fm_test_pearson(QuadraticFunction::kXy), 0.95);
  EXPECT_LE(std::abs(fm_test_pearson(QuadraticFunction::kDiffSq)), 0.3);
}

}  // namespace
}  // namespace ltr
