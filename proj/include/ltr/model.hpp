/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ltr/types.hpp"

namespace ltr {

enum class Link { kIdentity, kLogistic };

/// Polynomial model stored as a sum of rank-one terms,
///
///   f(x) = sum_t lambda_t * prod_d <P_d[t,:], x_d> * Q[t,:]
///
/// where x_d is the whole input in the single-view case and the d-th view in
/// the multi-view case. Row t of every factor matrix belongs to term t.
struct LtrModel {
  std::vector<Matrix> P;  // degree() matrices, each rank() x view width
  Matrix Q;               // rank() x outputs()
  Vector lambda;          // rank()
  bool homogenized = false;
  Link link = Link::kIdentity;

  LtrModel() = default;
  /// Zero-initialized model with every factor consuming n columns.
  LtrModel(Index degree, Index rank, Index n, Index n_y);

  Index degree() const { return static_cast<Index>(P.size()); }
  Index rank() const { return lambda.size(); }
  Index outputs() const { return Q.cols(); }
  /// Input width of factor d (0-based). Equal for all d unless multi-view.
  Index input_dim(Index d = 0) const { return P.at(static_cast<std::size_t>(d)).cols(); }
  bool multi_view() const;

  /// Throws kInvalidArgument when shapes disagree or entries are not finite.
  void validate() const;

  /// Keeps only the rank-one terms in [first, first + count).
  LtrModel slice(Index first, Index count) const;
  /// Stacks the terms of `other` under the terms of this model.
  void append(const LtrModel& other);
};

/// Input views plus targets. Rows are examples.
struct Dataset {
  std::vector<Matrix> views;
  Matrix Y;

  Dataset() = default;
  Dataset(Matrix X, Matrix Y);
  Dataset(std::vector<Matrix> views, Matrix Y);

  Index rows() const { return Y.rows(); }
  Index outputs() const { return Y.cols(); }
  bool multi_view() const { return views.size() > 1; }
  void validate() const;

  /// Row subset, views and targets alike.
  Dataset subset(std::span<const Index> rows) const;
};

/// Dense order-d tensor with equal mode sizes, stored with the first index
/// varying slowest. Only meant for checking small instances.
class DenseTensor {
 public:
  static constexpr std::size_t kMaxEntries = 10'000'000;

  DenseTensor(Index order, Index dim);

  Index order() const { return order_; }
  Index dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::span<const Index> idx);
  double operator()(std::span<const Index> idx) const;
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t offset(std::span<const Index> idx) const;

  Index order_;
  Index dim_;
  std::vector<double> data_;
};

/// Appends a trailing column of ones.
Matrix homogenize(const Matrix& X);

double forward_scalar(const LtrModel& model, const Vector& x);

struct ForwardResult {
  Matrix F;     // m x rank, elementwise product over factors of X_d P_d^T
  Matrix Yhat;  // m x outputs, F diag(lambda) Q, before any link function
};

/// Single view: every factor reads views[0]. Multi view: factor d reads
/// views[d] and views.size() must equal the degree.
ForwardResult forward_batch(const LtrModel& model, const std::vector<Matrix>& views);

/// Product over all factors except `skip` (0-based). All ones when the model
/// has a single factor.
Matrix forward_partial(const LtrModel& model, const std::vector<Matrix>& views, Index skip);

/// Applies homogenization and the link function: ready-to-use predictions.
Matrix predict(const LtrModel& model, const std::vector<Matrix>& raw_views);

DenseTensor materialize_tensor(const LtrModel& model);
double tensor_contract(const DenseTensor& T, const Vector& x);

/// View consumed by factor d.
const Matrix& view_for(const std::vector<Matrix>& views, Index d);
void check_views(const LtrModel& model, const std::vector<Matrix>& views);

}  // namespace ltr
