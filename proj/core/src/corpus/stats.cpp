// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/stats.hpp"

#include <string>
#include <unordered_set>

#include "sifn/common/errors.hpp"

namespace sifn::corpus {

DatasetStats stats_from_counts(std::size_t users, std::size_t items, std::size_t ratings) {
  if (users == 0 || items == 0) throw DataError("dataset statistics of an empty dataset");
  DatasetStats s{users, items, ratings, 0.0};
  s.density_percent = 100.0 * static_cast<double>(ratings) / (static_cast<double>(users) * static_cast<double>(items));
  return s;
}

DatasetStats dataset_stats(std::span<const ReviewRecord> records) {
  if (records.empty()) throw DataError("dataset statistics of an empty dataset");
  std::unordered_set<std::string> users;
  std::unordered_set<std::string> items;
  for (const auto& r : records) {
    users.insert(r.user_id);
    items.insert(r.item_id);
  }
  return stats_from_counts(users.size(), items.size(), records.size());
}

}  // namespace sifn::corpus
