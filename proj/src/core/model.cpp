/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/model.hpp"

#include <cmath>
#include <string>

namespace ltr {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

LtrModel::LtrModel(Index degree, Index rank, Index n, Index n_y)
    : Q(Matrix::Zero(rank, n_y)), lambda(Vector::Zero(rank)) {
  require(degree >= 1 && rank >= 1 && n >= 1 && n_y >= 1, ErrorCode::kInvalidArgument,
          "model dimensions must be positive");
  P.assign(static_cast<std::size_t>(degree), Matrix::Zero(rank, n));
}

bool LtrModel::multi_view() const {
  for (const auto& p : P)
    if (p.cols() != P.front().cols()) return true;
  return false;
}

void LtrModel::validate() const {
  require(!P.empty(), ErrorCode::kInvalidArgument, "model has no factors");
  require(rank() >= 1, ErrorCode::kInvalidArgument, "model rank must be positive");
  require(Q.rows() == rank() && Q.cols() >= 1, ErrorCode::kInvalidArgument,
          "Q must be rank x outputs, got " + shape(Q));
  for (std::size_t d = 0; d < P.size(); ++d) {
    require(P[d].rows() == rank() && P[d].cols() >= 1, ErrorCode::kInvalidArgument,
            "P[" + std::to_string(d) + "] has shape " + shape(P[d]));
    require(all_finite(P[d]), ErrorCode::kInvalidArgument, "non-finite entry in P");
  }
  require(all_finite(Q) && lambda.allFinite(), ErrorCode::kInvalidArgument,
          "non-finite entry in Q or lambda");
}

LtrModel LtrModel::slice(Index first, Index count) const {
  require(first >= 0 && count >= 1 && first + count <= rank(), ErrorCode::kInvalidArgument,
          "term slice out of range");
  LtrModel out;
  out.homogenized = homogenized;
  out.link = link;
  for (const auto& p : P) out.P.push_back(p.middleRows(first, count));
  out.Q = Q.middleRows(first, count);
  out.lambda = lambda.segment(first, count);
  return out;
}

void LtrModel::append(const LtrModel& other) {
  if (P.empty()) {
    *this = other;
    return;
  }
  require(other.degree() == degree() && other.outputs() == outputs(),
          ErrorCode::kDimensionMismatch, "cannot stack models of different shape");
  auto stack = [](const Matrix& a, const Matrix& b) {
    Matrix s(a.rows() + b.rows(), a.cols());
    s << a, b;
    return s;
  };
  for (std::size_t d = 0; d < P.size(); ++d) {
    require(P[d].cols() == other.P[d].cols(), ErrorCode::kDimensionMismatch,
            "cannot stack models with different input widths");
    P[d] = stack(P[d], other.P[d]);
  }
  Q = stack(Q, other.Q);
  Vector l(lambda.size() + other.lambda.size());
  l << lambda, other.lambda;
  lambda = std::move(l);
}

Dataset::Dataset(Matrix X, Matrix Y) : Y(std::move(Y)) { views.push_back(std::move(X)); }

Dataset::Dataset(std::vector<Matrix> views, Matrix Y) : views(std::move(views)), Y(std::move(Y)) {}

void Dataset::validate() const {
  require(!views.empty(), ErrorCode::kInvalidArgument, "dataset has no input views");
  for (const auto& v : views) {
    require(v.rows() == Y.rows(), ErrorCode::kDimensionMismatch,
            "view has " + std::to_string(v.rows()) + " rows but targets have " +
                std::to_string(Y.rows()));
    require(all_finite(v), ErrorCode::kInvalidArgument, "non-finite input value");
  }
  require(Y.cols() >= 1, ErrorCode::kInvalidArgument, "dataset has no target columns");
  require(all_finite(Y), ErrorCode::kInvalidArgument, "non-finite target value");
}

Dataset Dataset::subset(std::span<const Index> rows) const {
  Dataset out;
  auto take = [&](const Matrix& src) {
    Matrix dst(static_cast<Index>(rows.size()), src.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) dst.row(static_cast<Index>(i)) = src.row(rows[i]);
    return dst;
  };
  for (const auto& v : views) out.views.push_back(take(v));
  out.Y = take(Y);
  return out;
}

DenseTensor::DenseTensor(Index order, Index dim) : order_(order), dim_(dim) {
  require(order >= 1 && dim >= 1, ErrorCode::kInvalidArgument, "tensor order and dim must be positive");
  double entries = std::pow(static_cast<double>(dim), static_cast<double>(order));
  require(entries <= static_cast<double>(kMaxEntries), ErrorCode::kInvalidArgument,
          "dense tensor would need " + std::to_string(static_cast<long long>(entries)) +
              " entries (cap is 10^7)");
  data_.assign(static_cast<std::size_t>(entries), 0.0);
}

std::size_t DenseTensor::offset(std::span<const Index> idx) const {
  std::size_t off = 0;
  for (Index j : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
  return off;
}

double& DenseTensor::operator()(std::span<const Index> idx) { return data_[offset(idx)]; }
double DenseTensor::operator()(std::span<const Index> idx) const { return data_[offset(idx)]; }

Matrix homogenize(const Matrix& X) {
  require(all_finite(X), ErrorCode::kInvalidArgument, "cannot homogenize non-finite input");
  Matrix out(X.rows(), X.cols() + 1);
  out.leftCols(X.cols()) = X;
  out.col(X.cols()).setOnes();
  return out;
}

double forward_scalar(const LtrModel& model, const Vector& x) {
  require(model.outputs() == 1, ErrorCode::kDimensionMismatch, "forward_scalar needs a scalar-output model");
  require(!model.multi_view(), ErrorCode::kDimensionMismatch, "forward_scalar needs a single-view model");
  require(x.size() == model.input_dim(), ErrorCode::kDimensionMismatch,
          "input has " + std::to_string(x.size()) + " entries, model expects " +
              std::to_string(model.input_dim()));
  double sum = 0.0;
  for (Index t = 0; t < model.rank(); ++t) {
    double term = model.lambda(t);
    for (const auto& p : model.P) term *= p.row(t).dot(x);
    sum += term * model.Q(t, 0);
  }
  return sum;
}

const Matrix& view_for(const std::vector<Matrix>& views, Index d) {
  return views.size() == 1 ? views.front() : views[static_cast<std::size_t>(d)];
}

void check_views(const LtrModel& model, const std::vector<Matrix>& views) {
  require(!views.empty(), ErrorCode::kDimensionMismatch, "no input views given");
  require(views.size() == 1 || static_cast<Index>(views.size()) == model.degree(),
          ErrorCode::kDimensionMismatch,
          "got " + std::to_string(views.size()) + " views, model needs 1 or " +
              std::to_string(model.degree()));
  for (Index d = 0; d < model.degree(); ++d) {
    const Matrix& X = view_for(views, d);
    require(X.rows() == views.front().rows(), ErrorCode::kDimensionMismatch, "views differ in row count");
    require(X.cols() == model.input_dim(d), ErrorCode::kDimensionMismatch,
            "factor " + std::to_string(d + 1) + " expects " + std::to_string(model.input_dim(d)) +
                " input columns, found " + std::to_string(X.cols()));
  }
}

ForwardResult forward_batch(const LtrModel& model, const std::vector<Matrix>& views) {
  check_views(model, views);
  ForwardResult r;
  r.F = view_for(views, 0) * model.P[0].transpose();
  for (Index d = 1; d < model.degree(); ++d)
    r.F.array() *= (view_for(views, d) * model.P[static_cast<std::size_t>(d)].transpose()).array();
  r.Yhat = r.F * model.lambda.asDiagonal() * model.Q;
  return r;
}

Matrix forward_partial(const LtrModel& model, const std::vector<Matrix>& views, Index skip) {
  check_views(model, views);
  require(skip >= 0 && skip < model.degree(), ErrorCode::kInvalidArgument,
          "factor index " + std::to_string(skip + 1) + " out of range 1.." + std::to_string(model.degree()));
  Matrix out = Matrix::Ones(views.front().rows(), model.rank());
  for (Index d = 0; d < model.degree(); ++d) {
    if (d == skip) continue;
    out.array() *= (view_for(views, d) * model.P[static_cast<std::size_t>(d)].transpose()).array();
  }
  return out;
}

Matrix predict(const LtrModel& model, const std::vector<Matrix>& raw_views) {
  std::vector<Matrix> views;
  views.reserve(raw_views.size());
  for (const auto& v : raw_views) views.push_back(model.homogenized ? homogenize(v) : v);
  Matrix out = forward_batch(model, views).Yhat;
  if (model.link == Link::kLogistic)
    out = out.unaryExpr([](double f) { return 1.0 / (1.0 + std::exp(-f)); });
  return out;
}

DenseTensor materialize_tensor(const LtrModel& model) {
  require(model.outputs() == 1, ErrorCode::kDimensionMismatch, "tensor oracle needs a scalar-output model");
  require(!model.multi_view(), ErrorCode::kDimensionMismatch, "tensor oracle needs a single-view model");
  const Index order = model.degree();
  const Index n = model.input_dim();
  DenseTensor T(order, n);
  std::vector<Index> idx(static_cast<std::size_t>(order), 0);
  for (double& entry : T.data()) {
    double sum = 0.0;
    for (Index t = 0; t < model.rank(); ++t) {
      double term = model.lambda(t) * model.Q(t, 0);
      for (Index d = 0; d < order; ++d) term *= model.P[static_cast<std::size_t>(d)](t, idx[static_cast<std::size_t>(d)]);
      sum += term;
    }
    entry = sum;
    // odometer, last index fastest
    for (Index d = order - 1; d >= 0; --d) {
      auto& j = idx[static_cast<std::size_t>(d)];
      if (++j < n) break;
      j = 0;
    }
  }
  return T;
}

double tensor_contract(const DenseTensor& T, const Vector& x) {
  require(x.size() == T.dim(), ErrorCode::kDimensionMismatch,
          "vector has " + std::to_string(x.size()) + " entries, tensor dim is " + std::to_string(T.dim()));
  std::vector<Index> idx(static_cast<std::size_t>(T.order()), 0);
  double sum = 0.0;
  for (double entry : T.data()) {
    double w = entry;
    for (Index j : idx) w *= x(j);
    sum += w;
    for (Index d = T.order() - 1; d >= 0; --d) {
      auto& j = idx[static_cast<std::size_t>(d)];
      if (++j < T.dim()) break;
      j = 0;
    }
  }
  return sum;
}

}  // namespace ltr
