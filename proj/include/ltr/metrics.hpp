/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ltr/model.hpp"

namespace ltr {

/// Sample Pearson correlation. Empty when either side has zero variance.
std::optional<double> pearson(const Vector& y, const Vector& yhat);

double rmse(const Vector& y, const Vector& yhat);
double rmse(const Matrix& y, const Matrix& yhat);

/// Micro-averaged F1 over all cells of two binary matrices. Returns 0 when
/// there are no positives on either side.
double f1_multilabel(const Matrix& truth, const Matrix& pred);

/// Fraction of rows whose binarized prediction equals the truth on every label.
double accuracy(const Matrix& truth, const Matrix& pred);

/// Marks the k largest scores of each row with 1, the rest with 0.
Matrix top_k_binarize(const Matrix& scores, Index k);
Matrix threshold_binarize(const Matrix& scores, double threshold);

/// Between-layer share of total variance of per-layer predictions
/// (rows are layers, columns are examples). Empty when total variance is zero.
std::optional<double> correlation_ratio(const Matrix& layer_outputs);

/// Seeded shuffled fold assignment; fold sizes differ by at most one.
class CvPlan {
 public:
  CvPlan(Index rows, int folds, std::uint64_t seed);

  int folds() const { return folds_; }
  const std::vector<int>& assignment() const { return fold_of_; }
  std::vector<Index> train_rows(int fold) const;
  std::vector<Index> test_rows(int fold) const;

 private:
  int folds_;
  std::vector<int> fold_of_;
};

/// Trains on a dataset and returns predictions for the given raw test views.
using Learner = std::function<Matrix(const Dataset& train, const std::vector<Matrix>& test_views)>;

struct FoldMetrics {
  std::optional<double> pearson;  // mean over output columns
  double rmse = 0.0;
  double train_seconds = 0.0;
};

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(count)
  int count = 0;         // number of defined values
};

Summary summarize(const std::vector<double>& values);

struct CvResult {
  std::vector<FoldMetrics> folds;
  Summary pearson;
  Summary rmse;
  Summary train_seconds;
};

/// k-fold cross validation. Learner failures are rethrown with the fold index.
CvResult cross_validate(const Dataset& data, int folds, std::uint64_t seed, const Learner& learner);

}  // namespace ltr
