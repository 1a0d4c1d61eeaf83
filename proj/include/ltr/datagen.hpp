/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>

#include "ltr/model.hpp"

namespace ltr {

struct GeneratorSpec {
  Index n = 10;       // input variables
  Index degree = 3;
  Index rank = 3;
  Index m = 1000;     // examples
  double noise = 0.0; // noise std as a multiple of the noiseless output std
  std::uint64_t seed = 0;

  void validate() const;
};

/// Random homogeneous polynomial: every factor entry and every lambda is an
/// independent standard normal draw, Q is one.
LtrModel generate_model(const GeneratorSpec& spec);

/// Standard-normal inputs, targets from the model plus Gaussian noise whose
/// std is `noise` times the sample std of the noiseless targets.
Dataset sample_dataset(const LtrModel& model, Index m, double noise, std::uint64_t seed);

enum class QuadraticFunction { kXy, kSqDiff, kDiffSq };

QuadraticFunction quadratic_from_string(const std::string& name);
const char* to_string(QuadraticFunction f);
double quadratic_value(QuadraticFunction f, double x, double y);

/// Two standard-normal inputs and the exact value of the named quadratic.
Dataset quadratic_dataset(QuadraticFunction f, Index m, std::uint64_t seed);

}  // namespace ltr
