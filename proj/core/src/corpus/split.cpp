// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sifn/common/errors.hpp"
#include "sifn/common/random.hpp"

namespace sifn::corpus {

std::string_view to_string(SplitTag tag) {
  switch (tag) {
    case SplitTag::kTrain:
      return "train";
    case SplitTag::kValidation:
      return "validation";
    case SplitTag::kTest:
      return "test";
  }
  return "unknown";
}

SplitTag split_tag_from_string(std::string_view name) {
  if (name == "train") return SplitTag::kTrain;
  if (name == "validation") return SplitTag::kValidation;
  if (name == "test") return SplitTag::kTest;
  throw DataError("unknown split tag '" + std::string(name) + "'");
}

SplitIndices split_indices(std::size_t n, const SplitRatios& ratios, std::uint64_t seed) {
  const double total = ratios.train + ratios.validation + ratios.test;
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 || std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("split ratios must be nonnegative and sum to 1");
  }
  const auto n_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratios.validation));
  const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratios.test));
  if ((ratios.validation > 0 && n_val == 0) || (ratios.test > 0 && n_test == 0) || n_val + n_test >= n) {
    throw DataError("too few records (" + std::to_string(n) + ") to populate train, validation and test");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  SplitIndices out;
  const std::size_t n_train = n - n_val - n_test;
  out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                        order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
  return out;
}

DatasetSplit split_dataset(const std::vector<ReviewRecord>& records, const SplitRatios& ratios,
                           std::uint64_t seed) {
  auto idx = split_indices(records.size(), ratios, seed);
  DatasetSplit out;
  for (auto i : idx.train) out.train.push_back(records[i]);
  for (auto i : idx.validation) out.validation.push_back(records[i]);
  for (auto i : idx.test) out.test.push_back(records[i]);
  return out;
}

}  // namespace sifn::corpus
