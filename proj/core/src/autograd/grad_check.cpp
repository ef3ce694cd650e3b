// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/autograd/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "sifn/common/errors.hpp"

namespace sifn::ag {

bool GradCheckReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

double GradCheckReport::max_rel_error() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.max_rel_error);
  return worst;
}

GradCheckReport grad_check(const std::function<Tensor()>& loss_fn, std::span<const NamedTensor> params,
                           const GradCheckOptions& options) {
  if (!(options.eps > 0.0)) throw ConfigError("grad_check eps must be positive");

  for (const auto& p : params) {
    Tensor t = p.tensor;
    t.zero_grad();
  }
  Tensor loss = loss_fn();
  loss.backward();

  GradCheckReport report;
  report.tolerance = options.tolerance;
  const bool accept_all = std::isinf(options.tolerance) && options.tolerance > 0;

  for (const auto& p : params) {
    Tensor t = p.tensor;
    std::vector<double> analytic(t.numel(), 0.0);
    if (t.has_grad()) std::copy(t.grad().begin(), t.grad().end(), analytic.begin());

    GradCheckEntry entry;
    entry.name = p.name;
    entry.elements = t.numel();
    auto values = t.mutable_data();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double original = values[i];
      values[i] = original + options.eps;
      const double plus = loss_fn().item();
      values[i] = original - options.eps;
      const double minus = loss_fn().item();
      values[i] = original;

      const double numeric = (plus - minus) / (2.0 * options.eps);
      const double abs_err = std::abs(analytic[i] - numeric);
      const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), options.abs_floor});
      const double rel = abs_err / denom;
      entry.max_abs_error = std::max(entry.max_abs_error, abs_err);
      if (std::isnan(rel) || rel > entry.max_rel_error) entry.max_rel_error = rel;
    }
    entry.passed = accept_all || entry.max_rel_error <= options.tolerance;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace sifn::ag
