// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/kcore.hpp"

#include <string>
#include <unordered_map>

#include "sifn/common/errors.hpp"

namespace sifn::corpus {

std::vector<ReviewRecord> kcore_filter(std::vector<ReviewRecord> records, std::size_t min_reviews) {
  if (min_reviews < 1) throw ConfigError("min_reviews must be at least 1");
  while (true) {
    std::unordered_map<std::string, std::size_t> users;
    std::unordered_map<std::string, std::size_t> items;
    for (const auto& r : records) {
      ++users[r.user_id];
      ++items[r.item_id];
    }
    std::vector<ReviewRecord> kept;
    kept.reserve(records.size());
    for (auto& r : records) {
      if (users[r.user_id] >= min_reviews && items[r.item_id] >= min_reviews) kept.push_back(std::move(r));
    }
    const bool stable = kept.size() == records.size();
    records = std::move(kept);
    if (stable) break;
  }
  if (records.empty()) {
    throw DataError("k-core filtering with min_reviews=" + std::to_string(min_reviews) +
                    " removed every review; try a smaller min_reviews");
  }
  return records;
}

}  // namespace sifn::corpus
