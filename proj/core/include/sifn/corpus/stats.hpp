// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

#include "sifn/corpus/review.hpp"

namespace sifn::corpus {

struct DatasetStats {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t ratings = 0;
  /// ratings / (users * items), as a percentage.
  double density_percent = 0.0;
};

DatasetStats stats_from_counts(std::size_t users, std::size_t items, std::size_t ratings);
/// Throws DataError on empty input.
DatasetStats dataset_stats(std::span<const ReviewRecord> records);

}  // namespace sifn::corpus
