/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "ltr/metrics.hpp"

namespace ltr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double softplus(double f) { return std::max(f, 0.0) + std::log1p(std::exp(-std::abs(f))); }
double sigmoid(double f) { return 1.0 / (1.0 + std::exp(-f)); }

// Regularization weight for factor d. Uses the width of that factor so the
// multi-view case normalizes each view by its own column count.
double factor_reg(const LtrModel& model, Index d, const TrainConfig& config) {
  return config.c_p / static_cast<double>(model.rank() * model.degree() * model.input_dim(d));
}

double output_reg(const LtrModel& model, const TrainConfig& config) {
  return config.c_q / static_cast<double>(model.rank() * model.outputs());
}

double regularizer(const LtrModel& model, const TrainConfig& config) {
  double r = 0.0;
  for (Index d = 0; d < model.degree(); ++d)
    r += 0.5 * factor_reg(model, d, config) * model.P[static_cast<std::size_t>(d)].squaredNorm();
  return r + 0.5 * output_reg(model, config) * model.Q.squaredNorm();
}

// Data-term value and gradients for one batch. Views are already gathered.
struct BatchEval {
  double objective = 0.0;
  ParamGrads grads;
};

BatchEval evaluate_batch(const LtrModel& model, const std::vector<Matrix>& views, const Matrix& Y,
                         const TrainConfig& config, bool with_grads) {
  const Index m = Y.rows();
  const Index k = model.rank();
  const Index nd = model.degree();
  const double scale = 1.0 / static_cast<double>(m * model.outputs());

  // prefix[d] = product of factors < d, suffix[d] = product of factors >= d
  std::vector<Matrix> proj(static_cast<std::size_t>(nd));
  for (Index d = 0; d < nd; ++d)
    proj[static_cast<std::size_t>(d)] = view_for(views, d) * model.P[static_cast<std::size_t>(d)].transpose();
  std::vector<Matrix> prefix(static_cast<std::size_t>(nd + 1));
  prefix[0] = Matrix::Ones(m, k);
  for (Index d = 0; d < nd; ++d)
    prefix[static_cast<std::size_t>(d + 1)] =
        prefix[static_cast<std::size_t>(d)].cwiseProduct(proj[static_cast<std::size_t>(d)]);
  const Matrix& F = prefix[static_cast<std::size_t>(nd)];

  Matrix out = F * model.lambda.asDiagonal() * model.Q;
  Matrix E;
  BatchEval r;
  if (config.link == Link::kLogistic) {
    double nll = 0.0;
    for (Index j = 0; j < out.cols(); ++j)
      for (Index i = 0; i < m; ++i) nll += softplus(out(i, j)) - Y(i, j) * out(i, j);
    r.objective = scale * nll;
    E = Y - out.unaryExpr(&sigmoid);
  } else {
    E = Y - out;
    r.objective = 0.5 * scale * E.squaredNorm();
  }
  r.objective += regularizer(model, config);
  if (!with_grads) return r;

  // dObjective/dF = -scale * (E Q^T) diag(lambda)
  const Matrix G = E * model.Q.transpose();
  r.grads.lambda = -scale * F.cwiseProduct(G).colwise().sum().transpose();
  r.grads.Q = -scale * (model.lambda.asDiagonal() * (F.transpose() * E)) + output_reg(model, config) * model.Q;

  const Matrix W = G * model.lambda.asDiagonal();
  Matrix suffix = Matrix::Ones(m, k);
  r.grads.P.resize(static_cast<std::size_t>(nd));
  for (Index d = nd - 1; d >= 0; --d) {
    const auto du = static_cast<std::size_t>(d);
    Matrix weighted = W.cwiseProduct(prefix[du]).cwiseProduct(suffix);
    r.grads.P[du] = -scale * (weighted.transpose() * view_for(views, d)) + factor_reg(model, d, config) * model.P[du];
    if (d > 0) suffix = suffix.cwiseProduct(proj[du]);
  }
  return r;
}

std::vector<Matrix> prepare_views(const Dataset& data, const TrainConfig& config) {
  std::vector<Matrix> views;
  views.reserve(data.views.size());
  for (const auto& v : data.views) views.push_back(config.homogenize ? homogenize(v) : v);
  return views;
}

void gather_rows(const Matrix& src, std::span<const Index> rows, Matrix& dst) {
  dst.resize(static_cast<Index>(rows.size()), src.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) dst.row(static_cast<Index>(i)) = src.row(rows[i]);
}

LtrModel init_terms(const std::vector<Matrix>& views, Index degree, Index terms, Index n_y,
                    std::mt19937_64& rng) {
  LtrModel model;
  model.P.resize(static_cast<std::size_t>(degree));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index d = 0; d < degree; ++d) {
    const Index n = view_for(views, d).cols();
    const double sd = 1.0 / std::sqrt(static_cast<double>(n));
    model.P[static_cast<std::size_t>(d)] = Matrix::NullaryExpr(terms, n, [&] { return sd * normal(rng); });
  }
  model.lambda = Vector::Ones(terms);
  if (n_y == 1) {
    model.Q = Matrix::Ones(terms, 1);
  } else {
    const double sd = 1.0 / std::sqrt(static_cast<double>(n_y));
    model.Q = Matrix::NullaryExpr(terms, n_y, [&] { return sd * normal(rng); });
  }
  return model;
}

// Least-squares lambda for fixed factors and Q on the full residual. A tiny
// ridge keeps the system solvable; the result never does worse than lambda = 0.
void refit_scales(LtrModel& block, const std::vector<Matrix>& views, const Matrix& residual) {
  const Matrix F = forward_batch(block, views).F;
  const Matrix FtF = F.transpose() * F;
  const Matrix QQt = block.Q * block.Q.transpose();
  Matrix normal = FtF.cwiseProduct(QQt);
  const Vector rhs = (F.transpose() * residual).cwiseProduct(block.Q).rowwise().sum();
  const double ridge = 1e-12 * std::max(normal.trace() / static_cast<double>(normal.rows()), 1e-300);
  normal.diagonal().array() += ridge;
  const Vector solved = normal.ldlt().solve(rhs);
  if (!solved.allFinite()) return;

  auto residual_norm = [&](const Vector& l) {
    return (residual - F * l.asDiagonal() * block.Q).squaredNorm();
  };
  if (residual_norm(solved) <= residual_norm(block.lambda)) block.lambda = solved;
}

double residual_norm_after(const LtrModel& block, const std::vector<Matrix>& views, Matrix& residual) {
  residual -= forward_batch(block, views).Yhat;
  return residual.norm();
}

}  // namespace

const char* to_string(FitMode mode) {
  switch (mode) {
    case FitMode::kRankWise: return "rank_wise";
    case FitMode::kJoint: return "joint";
    case FitMode::kLayered: return "layered";
  }
  return "?";
}

FitMode fit_mode_from_string(const std::string& s) {
  if (s == "rank_wise") return FitMode::kRankWise;
  if (s == "joint") return FitMode::kJoint;
  if (s == "layered") return FitMode::kLayered;
  fail(ErrorCode::kInvalidArgument, "unknown mode '" + s + "' (expected rank_wise, joint or layered)");
}

const char* to_string(Link link) { return link == Link::kLogistic ? "logistic" : "identity"; }

Link link_from_string(const std::string& s) {
  if (s == "identity") return Link::kIdentity;
  if (s == "logistic") return Link::kLogistic;
  fail(ErrorCode::kInvalidArgument, "unknown link '" + s + "' (expected identity or logistic)");
}

void TrainConfig::validate() const {
  require(degree >= 1, ErrorCode::kInvalidArgument, "degree must be >= 1");
  require(rank >= 1, ErrorCode::kInvalidArgument, "rank must be >= 1");
  require(c_p >= 0.0 && c_q >= 0.0, ErrorCode::kInvalidArgument, "regularization constants must be >= 0");
  require(learning_rate > 0.0 && std::isfinite(learning_rate), ErrorCode::kInvalidArgument,
          "learning rate must be positive");
  require(epochs >= 1, ErrorCode::kInvalidArgument, "epochs must be >= 1");
  require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch size must be >= 1");
  require(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0 && adam_eps > 0.0,
          ErrorCode::kInvalidArgument, "ADAM constants out of range");
  if (mode == FitMode::kLayered) {
    require(!rank_blocks.empty(), ErrorCode::kInvalidArgument, "layered mode needs rank_blocks");
    Index total = 0;
    for (Index b : rank_blocks) {
      require(b >= 1, ErrorCode::kInvalidArgument, "every rank block must be >= 1");
      total += b;
    }
    require(total == rank, ErrorCode::kInvalidArgument,
            "rank_blocks sum to " + std::to_string(total) + " but rank is " + std::to_string(rank));
  }
}

ParamGrads ParamGrads::zeros_like(const LtrModel& model) {
  ParamGrads g;
  g.lambda = Vector::Zero(model.rank());
  for (const auto& p : model.P) g.P.push_back(Matrix::Zero(p.rows(), p.cols()));
  g.Q = Matrix::Zero(model.Q.rows(), model.Q.cols());
  return g;
}

double loss(const LtrModel& model, const std::vector<Matrix>& views, const Matrix& Y,
            const TrainConfig& config) {
  check_views(model, views);
  require(Y.rows() >= 1, ErrorCode::kInvalidArgument, "loss needs a nonempty dataset");
  require(Y.rows() == views.front().rows() && Y.cols() == model.outputs(), ErrorCode::kDimensionMismatch,
          "targets do not match inputs or model outputs");
  return evaluate_batch(model, views, Y, config, false).objective;
}

ParamGrads gradients(const LtrModel& model, const std::vector<Matrix>& views, const Matrix& Y,
                     const TrainConfig& config) {
  check_views(model, views);
  require(Y.rows() >= 1, ErrorCode::kInvalidArgument, "gradients need a nonempty batch");
  require(Y.rows() == views.front().rows() && Y.cols() == model.outputs(), ErrorCode::kDimensionMismatch,
          "targets do not match inputs or model outputs");
  return evaluate_batch(model, views, Y, config, true).grads;
}

void adam_step(AdamState& state, LtrModel& params, const ParamGrads& grads, const AdamConfig& adam,
               bool update_q) {
  ++state.step;
  const double c1 = 1.0 - std::pow(adam.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(adam.beta2, static_cast<double>(state.step));
  auto update = [&](auto& theta, auto& m, auto& v, const auto& g) {
    m = adam.beta1 * m + (1.0 - adam.beta1) * g;
    v = adam.beta2 * v + (1.0 - adam.beta2) * g.cwiseAbs2();
    theta.array() -= adam.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + adam.eps);
  };
  update(params.lambda, state.first.lambda, state.second.lambda, grads.lambda);
  for (std::size_t d = 0; d < params.P.size(); ++d)
    update(params.P[d], state.first.P[d], state.second.P[d], grads.P[d]);
  if (update_q) update(params.Q, state.first.Q, state.second.Q, grads.Q);
}

TermFit fit_terms(const std::vector<Matrix>& views, const Matrix& residual, Index terms,
                  const TrainConfig& config, std::uint64_t stream) {
  const Index m = residual.rows();
  require(m >= 1, ErrorCode::kInvalidArgument, "cannot fit an empty dataset");
  require(!views.empty() && views.front().rows() == m, ErrorCode::kDimensionMismatch,
          "residual rows do not match the inputs");
  require(views.size() == 1 || static_cast<Index>(views.size()) == config.degree, ErrorCode::kDimensionMismatch,
          "multi-view fit needs exactly one view per factor (" + std::to_string(config.degree) + "), got " +
              std::to_string(views.size()));

  std::seed_seq seq{config.seed, stream};
  std::mt19937_64 rng(seq);
  TermFit out;
  out.term = init_terms(views, config.degree, terms, residual.cols(), rng);
  out.term.link = config.link;
  AdamState state(out.term);
  const AdamConfig adam{config.learning_rate, config.adam_beta1, config.adam_beta2, config.adam_eps};
  const bool update_q = residual.cols() > 1;

  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<Matrix> batch_views(views.size());
  Matrix batch_y;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) std::shuffle(order.begin(), order.end(), rng);
    double weighted = 0.0;
    for (Index start = 0; start < m; start += config.batch_size) {
      const Index len = std::min(config.batch_size, m - start);
      std::span<const Index> rows(order.data() + start, static_cast<std::size_t>(len));
      for (std::size_t v = 0; v < views.size(); ++v) gather_rows(views[v], rows, batch_views[v]);
      gather_rows(residual, rows, batch_y);

      BatchEval eval = evaluate_batch(out.term, batch_views, batch_y, config, true);
      if (!std::isfinite(eval.objective))
        fail(ErrorCode::kDiverged, "training diverged: objective became non-finite at epoch " +
                                       std::to_string(epoch));
      weighted += eval.objective * static_cast<double>(len);
      adam_step(state, out.term, eval.grads, adam, update_q);
    }
    out.epoch_loss.push_back(weighted / static_cast<double>(m));
  }
  require(out.term.lambda.allFinite() && out.term.Q.allFinite(), ErrorCode::kDiverged,
          "training diverged: parameters became non-finite");
  for (const auto& p : out.term.P)
    require(all_finite(p), ErrorCode::kDiverged, "training diverged: parameters became non-finite");

  if (config.refit_scales && config.link == Link::kIdentity) refit_scales(out.term, views, residual);
  return out;
}

TermFit fit_rank_one(const std::vector<Matrix>& views, const Matrix& residual, const TrainConfig& config,
                     std::uint64_t stream) {
  return fit_terms(views, residual, 1, config, stream);
}

namespace {

// Shared driver for rank_wise, joint and layered fitting: fits consecutive
// blocks of terms, deflating the training targets after each block.
FitResult fit_blocks(const Dataset& data, const TrainConfig& config, const std::vector<Index>& blocks) {
  config.validate();
  data.validate();
  const auto start = Clock::now();
  const std::vector<Matrix> views = prepare_views(data, config);

  FitResult result;
  result.report.mode = config.mode;
  result.report.link = config.link;
  Matrix residual = data.Y;
  result.report.initial_residual_norm = residual.norm();
  Matrix layer_outputs;  // rows are layers, scalar outputs only
  if (data.outputs() == 1) layer_outputs.resize(0, data.rows());

  Index first = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto phase_start = Clock::now();
    TermFit fitted = fit_terms(views, residual, blocks[b], config, b);
    fitted.term.homogenized = config.homogenize;

    PhaseReport phase;
    phase.first_term = first;
    phase.terms = blocks[b];
    phase.epoch_loss = std::move(fitted.epoch_loss);
    if (data.outputs() == 1) {
      const Matrix layer = forward_batch(fitted.term, views).Yhat;
      layer_outputs.conservativeResize(layer_outputs.rows() + 1, Eigen::NoChange);
      layer_outputs.row(layer_outputs.rows() - 1) = layer.col(0).transpose();
      if (config.mode == FitMode::kLayered) phase.eta2 = correlation_ratio(layer_outputs);
    }
    if (config.link == Link::kLogistic) {
      Matrix probs = forward_batch(fitted.term, views).Yhat.unaryExpr(&sigmoid);
      phase.residual_norm = (residual - probs).norm();
    } else {
      phase.residual_norm = residual_norm_after(fitted.term, views, residual);
    }
    phase.seconds = seconds_since(phase_start);
    result.report.phases.push_back(std::move(phase));

    result.model.append(fitted.term);
    first += blocks[b];
  }
  result.model.homogenized = config.homogenize;
  result.model.link = config.link;
  result.report.lambda = result.model.lambda;
  result.report.seconds = seconds_since(start);
  return result;
}

}  // namespace

FitResult fit_rankwise(const Dataset& data, const TrainConfig& config) {
  TrainConfig c = config;
  c.mode = FitMode::kRankWise;
  return fit_blocks(data, c, std::vector<Index>(static_cast<std::size_t>(c.rank), 1));
}

FitResult fit_joint(const Dataset& data, const TrainConfig& config) {
  TrainConfig c = config;
  c.mode = FitMode::kJoint;
  return fit_blocks(data, c, {c.rank});
}

FitResult fit_layered(const Dataset& data, const TrainConfig& config) {
  TrainConfig c = config;
  c.mode = FitMode::kLayered;
  return fit_blocks(data, c, c.rank_blocks);
}

FitResult fit_logistic(const Dataset& data, const TrainConfig& config) {
  data.validate();
  for (Index j = 0; j < data.Y.cols(); ++j)
    for (Index i = 0; i < data.Y.rows(); ++i)
      require(data.Y(i, j) == 0.0 || data.Y(i, j) == 1.0, ErrorCode::kInvalidArgument,
              "logistic fit needs labels in {0,1}; row " + std::to_string(i + 1) + " has " +
                  std::to_string(data.Y(i, j)));
  TrainConfig c = config;
  c.link = Link::kLogistic;
  c.mode = FitMode::kJoint;
  return fit_blocks(data, c, {c.rank});
}

FitResult fit(const Dataset& data, const TrainConfig& config) {
  if (config.link == Link::kLogistic) return fit_logistic(data, config);
  switch (config.mode) {
    case FitMode::kRankWise: return fit_rankwise(data, config);
    case FitMode::kJoint: return fit_joint(data, config);
    case FitMode::kLayered: return fit_layered(data, config);
  }
  fail(ErrorCode::kInvalidArgument, "unknown fit mode");
}

}  // namespace ltr
