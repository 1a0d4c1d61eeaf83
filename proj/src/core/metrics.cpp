/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

namespace ltr {

std::optional<double> pearson(const Vector& y, const Vector& yhat) {
  require(y.size() == yhat.size(), ErrorCode::kDimensionMismatch, "pearson: length mismatch");
  require(y.size() >= 2, ErrorCode::kInvalidArgument, "pearson needs at least two values");
  const Vector a = y.array() - y.mean();
  const Vector b = yhat.array() - yhat.mean();
  const double saa = a.squaredNorm();
  const double sbb = b.squaredNorm();
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(a.dot(b) / std::sqrt(saa * sbb), -1.0, 1.0);
}

double rmse(const Vector& y, const Vector& yhat) {
  require(y.size() == yhat.size(), ErrorCode::kDimensionMismatch, "rmse: length mismatch");
  require(y.size() >= 1, ErrorCode::kInvalidArgument, "rmse of empty input");
  return std::sqrt((y - yhat).squaredNorm() / static_cast<double>(y.size()));
}

double rmse(const Matrix& y, const Matrix& yhat) {
  require(y.rows() == yhat.rows() && y.cols() == yhat.cols(), ErrorCode::kDimensionMismatch,
          "rmse: shape mismatch");
  require(y.size() >= 1, ErrorCode::kInvalidArgument, "rmse of empty input");
  return std::sqrt((y - yhat).squaredNorm() / static_cast<double>(y.size()));
}

namespace {

void require_binary(const Matrix& m, const char* what) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      require(m(i, j) == 0.0 || m(i, j) == 1.0, ErrorCode::kInvalidArgument,
              std::string(what) + " must be binary");
}

}  // namespace

double f1_multilabel(const Matrix& truth, const Matrix& pred) {
  require(truth.rows() == pred.rows() && truth.cols() == pred.cols(), ErrorCode::kDimensionMismatch,
          "f1: shape mismatch");
  require_binary(truth, "truth");
  require_binary(pred, "predictions");
  const double tp = truth.cwiseProduct(pred).sum();
  const double fp = pred.sum() - tp;
  const double fn = truth.sum() - tp;
  const double denom = 2.0 * tp + fp + fn;
  return denom == 0.0 ? 0.0 : 2.0 * tp / denom;
}

double accuracy(const Matrix& truth, const Matrix& pred) {
  require(truth.rows() == pred.rows() && truth.cols() == pred.cols(), ErrorCode::kDimensionMismatch,
          "accuracy: shape mismatch");
  require(truth.rows() >= 1, ErrorCode::kInvalidArgument, "accuracy of empty input");
  Index hits = 0;
  for (Index i = 0; i < truth.rows(); ++i) hits += (truth.row(i) == pred.row(i)) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.rows());
}

Matrix top_k_binarize(const Matrix& scores, Index k) {
  require(k >= 0, ErrorCode::kInvalidArgument, "top-k needs k >= 0");
  Matrix out = Matrix::Zero(scores.rows(), scores.cols());
  const Index keep = std::min(k, scores.cols());
  std::vector<Index> idx(static_cast<std::size_t>(scores.cols()));
  for (Index i = 0; i < scores.rows(); ++i) {
    std::iota(idx.begin(), idx.end(), Index{0});
    // ties broken by column order for determinism
    std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return scores(i, a) > scores(i, b); });
    for (Index j = 0; j < keep; ++j) out(i, idx[static_cast<std::size_t>(j)]) = 1.0;
  }
  return out;
}

Matrix threshold_binarize(const Matrix& scores, double threshold) {
  return scores.unaryExpr([threshold](double s) { return s >= threshold ? 1.0 : 0.0; });
}

std::optional<double> correlation_ratio(const Matrix& layer_outputs) {
  require(layer_outputs.rows() >= 1, ErrorCode::kInvalidArgument, "correlation ratio needs at least one layer");
  require(layer_outputs.cols() >= 2, ErrorCode::kInvalidArgument, "correlation ratio needs at least two examples");
  const Vector layer_means = layer_outputs.rowwise().mean();
  const double grand = layer_means.mean();
  const double m = static_cast<double>(layer_outputs.cols());
  const double between = m * (layer_means.array() - grand).square().sum();
  const double total = (layer_outputs.array() - grand).square().sum();
  if (total == 0.0) return std::nullopt;
  return std::clamp(between / total, 0.0, 1.0);
}

CvPlan::CvPlan(Index rows, int folds, std::uint64_t seed) : folds_(folds) {
  require(folds >= 2, ErrorCode::kInvalidArgument, "cross validation needs at least 2 folds");
  require(rows >= folds, ErrorCode::kInvalidArgument,
          "cannot split " + std::to_string(rows) + " rows into " + std::to_string(folds) + " folds");
  std::vector<Index> perm(static_cast<std::size_t>(rows));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  fold_of_.assign(static_cast<std::size_t>(rows), 0);
  for (std::size_t i = 0; i < perm.size(); ++i)
    fold_of_[static_cast<std::size_t>(perm[i])] = static_cast<int>(i % static_cast<std::size_t>(folds));
}

std::vector<Index> CvPlan::train_rows(int fold) const {
  std::vector<Index> rows;
  for (std::size_t i = 0; i < fold_of_.size(); ++i)
    if (fold_of_[i] != fold) rows.push_back(static_cast<Index>(i));
  return rows;
}

std::vector<Index> CvPlan::test_rows(int fold) const {
  std::vector<Index> rows;
  for (std::size_t i = 0; i < fold_of_.size(); ++i)
    if (fold_of_[i] == fold) rows.push_back(static_cast<Index>(i));
  return rows;
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    s.std_error = sd / std::sqrt(static_cast<double>(values.size()));
  }
  return s;
}

CvResult cross_validate(const Dataset& data, int folds, std::uint64_t seed, const Learner& learner) {
  data.validate();
  const CvPlan plan(data.rows(), folds, seed);
  CvResult result;
  std::vector<double> pearsons, rmses, times;
  for (int f = 0; f < folds; ++f) {
    const auto train_rows = plan.train_rows(f);
    const auto test_rows = plan.test_rows(f);
    const Dataset train = data.subset(train_rows);
    const Dataset test = data.subset(test_rows);

    FoldMetrics fm;
    Matrix pred;
    const auto start = std::chrono::steady_clock::now();
    try {
      pred = learner(train, test.views);
    } catch (const Error& e) {
      throw Error(e.code(), "fold " + std::to_string(f + 1) + ": " + e.what());
    } catch (const std::exception& e) {
      fail(ErrorCode::kNumeric, "fold " + std::to_string(f + 1) + ": " + e.what());
    }
    fm.train_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(pred.rows() == test.Y.rows() && pred.cols() == test.Y.cols(), ErrorCode::kDimensionMismatch,
            "fold " + std::to_string(f + 1) + ": learner returned predictions of the wrong shape");

    fm.rmse = rmse(test.Y, pred);
    double sum = 0.0;
    bool defined = true;
    for (Index j = 0; j < pred.cols() && defined; ++j) {
      auto p = pearson(test.Y.col(j), pred.col(j));
      if (!p) defined = false;
      else sum += *p;
    }
    if (defined) {
      fm.pearson = sum / static_cast<double>(pred.cols());
      pearsons.push_back(*fm.pearson);
    }
    rmses.push_back(fm.rmse);
    times.push_back(fm.train_seconds);
    result.folds.push_back(fm);
  }
  result.pearson = summarize(pearsons);
  result.rmse = summarize(rmses);
  result.train_seconds = summarize(times);
  return result;
}

}  // namespace ltr
