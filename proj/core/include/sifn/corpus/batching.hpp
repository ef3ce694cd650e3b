// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sifn/corpus/split.hpp"

namespace sifn::corpus {

/// One observed (user, item) rating resolved against the profile sets.
struct Pair {
  std::size_t pair_id = 0;
  std::string user_id;
  std::string item_id;
  std::size_t user = 0;  // ProfileSet index, 0 = cold start
  std::size_t item = 0;
  double rating = 0.0;
  std::size_t record_id = 0;
  SplitTag split = SplitTag::kTrain;
  // Slot holding this pair's own review, masked out while scoring the pair.
  std::optional<std::size_t> user_slot;
  std::optional<std::size_t> item_slot;
};

/// Index-aligned minibatch.
struct Batch {
  std::vector<std::size_t> pair_ids;
  std::vector<std::size_t> users;
  std::vector<std::size_t> items;
  std::vector<double> ratings;
  std::vector<std::optional<std::size_t>> user_excluded_slot;
  std::vector<std::optional<std::size_t>> item_excluded_slot;

  std::size_t size() const { return pair_ids.size(); }
  void push_back(const Pair& p);
};

/// Every pair exactly once, in batches of `batch_size` (the last may be
/// short). With a seed the order is a seeded permutation, else input order.
std::vector<Batch> make_batches(std::span<const Pair> pairs, std::size_t batch_size,
                                std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace sifn::corpus
