// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sifn/model/params.hpp"

namespace sifn::train {

struct AdamOptions {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Global-norm clipping threshold; nullopt disables clipping.
  std::optional<double> clip_norm = 5.0;
};

struct AdamState {
  std::vector<std::vector<double>> first;   // one per parameter, same size
  std::vector<std::vector<double>> second;
  std::uint64_t t = 0;
};

struct StepReport {
  double grad_norm = 0.0;  // before clipping
  bool clipped = false;
};

/// One bias-corrected Adam update of every parameter from its accumulated
/// gradient (missing gradients count as zero). Frozen rows are left
/// untouched. Throws NumericError naming the parameter on a NaN or
/// infinite gradient, before anything is modified.
StepReport adam_step(model::ParameterSet& params, AdamState& state, const AdamOptions& options);

}  // namespace sifn::train
