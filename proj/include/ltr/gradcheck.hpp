/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltr/training.hpp"

namespace ltr {

enum class ParamGroup { kLambda, kP, kQ };
const char* to_string(ParamGroup g);

struct GradcheckOptions {
  std::vector<Index> degrees{1, 2, 3, 4};
  std::vector<Index> outputs{1, 3};
  std::vector<bool> multi_view{false, true};
  std::vector<Link> links{Link::kIdentity, Link::kLogistic};
  Index rows = 10;
  Index rank = 2;
  Index n = 3;
  double step = 1e-5;
  double tolerance = 1e-5;
  /// Denominator floor in the relative error, so entries whose true
  /// derivative is ~0 are compared absolutely.
  double floor = 1e-6;
  std::uint64_t seed = 1;
  /// Test hook: negate the analytic gradient of this group before comparing.
  std::optional<ParamGroup> corrupt;
};

struct GradcheckEntry {
  std::string shape;
  ParamGroup group = ParamGroup::kLambda;
  double max_rel_error = 0.0;
  std::string worst_index;  // e.g. "P2[1,0]"
  bool passed = true;
};

struct GradcheckReport {
  std::vector<GradcheckEntry> entries;
  bool passed = true;
};

/// Relative error used throughout: |a - b| / max(|a|, |b|, floor).
double relative_error(double analytic, double numeric, double floor);

/// Compares `gradients` against central differences of `loss` on a random
/// instance of every shape in the grid.
GradcheckReport run_gradcheck(const GradcheckOptions& options);

}  // namespace ltr
