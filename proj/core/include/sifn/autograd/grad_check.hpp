// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sifn/autograd/tensor.hpp"

namespace sifn::ag {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct GradCheckOptions {
  double eps = 1e-5;
  double tolerance = 1e-4;
  /// Relative error is |analytic - numeric| / max(|analytic|, |numeric|, abs_floor);
  /// the floor keeps vanishing components from dominating the report.
  double abs_floor = 1e-6;
};

struct GradCheckEntry {
  std::string name;
  std::size_t elements = 0;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  bool passed = true;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double tolerance = 0.0;

  bool passed() const;
  double max_rel_error() const;
};

/// Compares the reverse-mode gradient of the scalar built by `loss_fn` with
/// central differences (f(t+eps) - f(t-eps)) / (2 eps), element by element,
/// for every tensor in `params`. `loss_fn` must be deterministic.
GradCheckReport grad_check(const std::function<Tensor()>& loss_fn, std::span<const NamedTensor> params,
                           const GradCheckOptions& options = {});

}  // namespace sifn::ag
