// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sifn/corpus/review.hpp"

namespace sifn::eval {

/// Mean squared residual. Throws DataError when empty, ShapeError when misaligned.
double mse(std::span<const double> predictions, std::span<const double> targets);

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> row);

/// Fraction of rows of `scores` ([N, classes], row-major) whose argmax
/// equals the label. Rows with keep[i] == 0 are skipped when `keep` is
/// given. Throws DataError when no row is counted.
double sentiment_accuracy(std::span<const double> scores, std::size_t classes,
                          std::span<const corpus::SentimentLabel> labels, std::span<const std::uint8_t> keep = {});

/// (baseline - ours) / baseline * 100. Throws DomainError for baseline <= 0.
double relative_improvement(double baseline_mse, double our_mse);

/// Fixed-point rendering with `digits` significant figures ("0.798", "45.7").
std::string format_significant(double value, int digits = 3);

/// Signed percentage at three significant figures ("+1.81%", "-0.250%").
std::string render_percent(double percent);

double median(std::vector<double> values);

}  // namespace sifn::eval
