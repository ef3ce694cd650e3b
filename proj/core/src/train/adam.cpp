// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/train/adam.hpp"

#include <cmath>
#include <string>

#include "sifn/common/errors.hpp"

namespace sifn::train {

StepReport adam_step(model::ParameterSet& params, AdamState& state, const AdamOptions& options) {
  auto& entries = params.entries();
  if (state.first.empty()) {
    for (const auto& p : entries) {
      state.first.emplace_back(p.tensor.numel(), 0.0);
      state.second.emplace_back(p.tensor.numel(), 0.0);
    }
  }
  if (state.first.size() != entries.size()) throw ConfigError("optimizer state does not match the parameter set");

  StepReport report;
  double sq = 0.0;
  for (const auto& p : entries) {
    for (double g : p.tensor.grad()) {
      if (!std::isfinite(g)) throw NumericError("non-finite gradient in parameter '" + p.name + "'");
      sq += g * g;
    }
  }
  report.grad_norm = std::sqrt(sq);
  double factor = 1.0;
  if (options.clip_norm && report.grad_norm > *options.clip_norm) {
    factor = *options.clip_norm / report.grad_norm;
    report.clipped = true;
  }

  ++state.t;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(options.beta1, t);
  const double c2 = 1.0 - std::pow(options.beta2, t);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& p = entries[i];
    const auto grad = p.tensor.grad();
    if (grad.empty()) continue;
    auto data = p.tensor.mutable_data();
    auto& m = state.first[i];
    auto& v = state.second[i];
    if (m.size() != data.size()) throw ConfigError("optimizer state shape mismatch for '" + p.name + "'");
    std::size_t frozen_begin = data.size();
    std::size_t frozen_end = data.size();
    if (p.frozen_row) {
      const std::size_t width = p.tensor.rank() > 1 ? p.tensor.dim(1) : 1;
      frozen_begin = *p.frozen_row * width;
      frozen_end = frozen_begin + width;
    }
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (j >= frozen_begin && j < frozen_end) continue;
      const double g = grad[j] * factor;
      m[j] = options.beta1 * m[j] + (1.0 - options.beta1) * g;
      v[j] = options.beta2 * v[j] + (1.0 - options.beta2) * g * g;
      data[j] -= options.learning_rate * (m[j] / c1) / (std::sqrt(v[j] / c2) + options.epsilon);
    }
  }
  return report;
}

}  // namespace sifn::train
