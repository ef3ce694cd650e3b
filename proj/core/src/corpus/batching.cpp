// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/batching.hpp"

#include <algorithm>
#include <numeric>

#include "sifn/common/errors.hpp"
#include "sifn/common/random.hpp"

namespace sifn::corpus {

void Batch::push_back(const Pair& p) {
  pair_ids.push_back(p.pair_id);
  users.push_back(p.user);
  items.push_back(p.item);
  ratings.push_back(p.rating);
  user_excluded_slot.push_back(p.user_slot);
  item_excluded_slot.push_back(p.item_slot);
}

std::vector<Batch> make_batches(std::span<const Pair> pairs, std::size_t batch_size,
                                std::optional<std::uint64_t> shuffle_seed) {
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle_seed) {
    Rng rng(*shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<Batch> batches;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    Batch b;
    for (std::size_t i = start; i < std::min(order.size(), start + batch_size); ++i) b.push_back(pairs[order[i]]);
    batches.push_back(std::move(b));
  }
  return batches;
}

}  // namespace sifn::corpus
