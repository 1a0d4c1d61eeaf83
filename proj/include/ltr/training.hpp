/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltr/model.hpp"

namespace ltr {

enum class FitMode { kRankWise, kJoint, kLayered };

const char* to_string(FitMode mode);
FitMode fit_mode_from_string(const std::string& s);
const char* to_string(Link link);
Link link_from_string(const std::string& s);

struct TrainConfig {
  Index degree = 2;
  Index rank = 2;
  double c_p = 1e-5;
  double c_q = 1e-5;
  double learning_rate = 0.05;
  int epochs = 10;
  Index batch_size = 500;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  FitMode mode = FitMode::kRankWise;
  std::vector<Index> rank_blocks;  // layered mode only; must sum to rank
  Link link = Link::kIdentity;
  std::uint64_t seed = 0;
  bool shuffle = true;
  /// Append a constant-one input column so lower-degree monomials are reachable.
  bool homogenize = false;
  /// After each block, re-solve its lambda by least squares on the full
  /// residual. Guarantees that deflation never increases the residual.
  bool refit_scales = true;

  void validate() const;
};

/// Gradient (or moment) buffers shaped like the trainable parameters.
struct ParamGrads {
  Vector lambda;
  std::vector<Matrix> P;
  Matrix Q;

  static ParamGrads zeros_like(const LtrModel& model);
};

struct AdamState {
  ParamGrads first;
  ParamGrads second;
  long step = 0;

  explicit AdamState(const LtrModel& model)
      : first(ParamGrads::zeros_like(model)), second(ParamGrads::zeros_like(model)) {}
};

struct AdamConfig {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Regularized objective on (views, Y); views must already match the model
/// widths (homogenized if the model is).
double loss(const LtrModel& model, const std::vector<Matrix>& views, const Matrix& Y,
            const TrainConfig& config);

/// Analytic gradient of `loss` with respect to lambda, every P_d and Q.
ParamGrads gradients(const LtrModel& model, const std::vector<Matrix>& views, const Matrix& Y,
                     const TrainConfig& config);

/// One bias-corrected ADAM update. Q is left untouched when update_q is false
/// (scalar outputs keep Q fixed at one).
void adam_step(AdamState& state, LtrModel& params, const ParamGrads& grads, const AdamConfig& adam,
               bool update_q);

struct PhaseReport {
  Index first_term = 0;
  Index terms = 0;
  std::vector<double> epoch_loss;  // mean mini-batch objective per epoch
  double residual_norm = 0.0;      // Frobenius norm of training residual after the phase
  std::optional<double> eta2;      // layered mode, scalar outputs
  double seconds = 0.0;
};

struct FitReport {
  FitMode mode = FitMode::kRankWise;
  Link link = Link::kIdentity;
  double initial_residual_norm = 0.0;
  std::vector<PhaseReport> phases;  // one per rank (rank_wise), layer, or a single joint phase
  double seconds = 0.0;
  Vector lambda;
};

struct FitResult {
  LtrModel model;
  FitReport report;
};

struct TermFit {
  LtrModel term;
  std::vector<double> epoch_loss;
};

/// Fits `terms` rank-one terms jointly against `residual` with mini-batch
/// ADAM. Views must already be homogenized if requested. `stream` selects an
/// independent random stream derived from config.seed.
TermFit fit_terms(const std::vector<Matrix>& views, const Matrix& residual, Index terms,
                  const TrainConfig& config, std::uint64_t stream);

/// Single rank-one term against the given residual.
TermFit fit_rank_one(const std::vector<Matrix>& views, const Matrix& residual,
                     const TrainConfig& config, std::uint64_t stream = 0);

FitResult fit_rankwise(const Dataset& data, const TrainConfig& config);
FitResult fit_joint(const Dataset& data, const TrainConfig& config);
FitResult fit_layered(const Dataset& data, const TrainConfig& config);
FitResult fit_logistic(const Dataset& data, const TrainConfig& config);

/// Dispatches on config.link and config.mode.
FitResult fit(const Dataset& data, const TrainConfig& config);

}  // namespace ltr
