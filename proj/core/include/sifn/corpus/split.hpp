// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sifn/corpus/review.hpp"

namespace sifn::corpus {

enum class SplitTag : std::uint8_t { kTrain = 0, kValidation = 1, kTest = 2 };

std::string_view to_string(SplitTag tag);
SplitTag split_tag_from_string(std::string_view name);

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

struct DatasetSplit {
  std::vector<ReviewRecord> train;
  std::vector<ReviewRecord> validation;
  std::vector<ReviewRecord> test;
};

/// Seeded shuffle of [0, n) cut into train/validation/test. Validation and
/// test sizes are round(n * ratio); train takes the rest. Each part must be
/// nonempty.
SplitIndices split_indices(std::size_t n, const SplitRatios& ratios, std::uint64_t seed);

DatasetSplit split_dataset(const std::vector<ReviewRecord>& records, const SplitRatios& ratios,
                           std::uint64_t seed);

}  // namespace sifn::corpus
