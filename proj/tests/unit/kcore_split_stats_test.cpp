// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sifn/common/errors.hpp"
#include "sifn/corpus/batching.hpp"
#include "sifn/corpus/kcore.hpp"
#include "sifn/corpus/split.hpp"
#include "sifn/corpus/stats.hpp"

namespace sifn::corpus {
namespace {

ReviewRecord rec(std::size_t id, std::string user, std::string item) {
  ReviewRecord r;
  r.id = id;
  r.user_id = std::move(user);
  r.item_id = std::move(item);
  r.rating = 4;
  r.text = "ok";
  return r;
}

std::vector<ReviewRecord> random_records(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> user(0, 14), item(0, 9);
  std::vector<ReviewRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(rec(i, "u" + std::to_string(user(rng)), "i" + std::to_string(item(rng))));
  }
  return out;
}

std::vector<std::size_t> ids(const std::vector<ReviewRecord>& rs) {
  std::vector<std::size_t> out;
  for (const auto& r : rs) out.push_back(r.id);
  return out;
}

TEST(KCore, OneCoreIsIdentity) {
  auto records = random_records(40, 1);
  EXPECT_EQ(ids(kcore_filter(records, 1)), ids(records));
}

TEST(KCore, EmptyResultIsAnError) {
  std::vector<ReviewRecord> records{rec(0, "a", "x"), rec(1, "b", "x"), rec(2, "c", "x")};
  EXPECT_THROW(kcore_filter(records, 2), DataError);
  EXPECT_THROW(kcore_filter(records, 0), ConfigError);
}

TEST(KCore, CascadesToFixpoint) {
  // "b" loses its only item after "y" is removed; the 2-core is the a/c x/z block.
  std::vector<ReviewRecord> records{rec(0, "a", "x"), rec(1, "a", "z"), rec(2, "c", "x"), rec(3, "c", "z"),
                                    rec(4, "b", "y"), rec(5, "b", "x")};
  auto out = kcore_filter(records, 2);
  EXPECT_EQ(ids(out), (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(KCore, OutputIsStableAndSatisfiesTheBound) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto once = kcore_filter(random_records(120, seed), 3);
    EXPECT_EQ(ids(kcore_filter(once, 3)), ids(once));
    std::map<std::string, int> users, items;
    for (const auto& r : once) {
      ++users[r.user_id];
      ++items[r.item_id];
    }
    for (const auto& [_, c] : users) EXPECT_GE(c, 3);
    for (const auto& [_, c] : items) EXPECT_GE(c, 3);
  }
}

TEST(Split, EightyTenTen) {
  auto s = split_indices(10, {}, 42);
  EXPECT_EQ(s.train.size(), 8u);
  EXPECT_EQ(s.validation.size(), 1u);
  EXPECT_EQ(s.test.size(), 1u);
}

TEST(Split, DeterministicUnderSeed) {
  auto a = split_indices(50, {}, 9);
  auto b = split_indices(50, {}, 9);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.validation, b.validation);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(a.train, split_indices(50, {}, 10).train);
}

TEST(Split, PartitionsTheInput) {
  auto records = random_records(37, 3);
  auto split = split_dataset(records, {}, 5);
  std::vector<std::size_t> all;
  for (const auto* part : {&split.train, &split.validation, &split.test}) {
    for (const auto& r : *part) all.push_back(r.id);
  }
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(37);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  EXPECT_EQ(all, expected);
}

TEST(Split, TooFewRecords) {
  EXPECT_THROW(split_indices(3, {}, 1), DataError);
  EXPECT_THROW(split_indices(10, {0.5, 0.5, 0.5}, 1), ConfigError);
  auto all_train = split_indices(3, {1, 0, 0}, 1);
  EXPECT_EQ(all_train.train.size(), 3u);
}

TEST(Split, TagNames) {
  for (auto tag : {SplitTag::kTrain, SplitTag::kValidation, SplitTag::kTest}) {
    EXPECT_EQ(split_tag_from_string(to_string(tag)), tag);
  }
  EXPECT_THROW(split_tag_from_string("dev"), DataError);
}

TEST(Stats, DensityIsAPercentage) {
  auto one = stats_from_counts(1, 1, 1);
  EXPECT_DOUBLE_EQ(one.density_percent, 100.0);
  auto music = stats_from_counts(1429, 900, 10261);
  EXPECT_DOUBLE_EQ(music.density_percent, 100.0 * 10261 / (1429.0 * 900.0));
  auto games = stats_from_counts(24303, 10672, 213577);
  EXPECT_NEAR(games.density_percent, 0.0823, 5e-5);
  EXPECT_THROW(stats_from_counts(0, 1, 0), DataError);
}

TEST(Stats, CountsDistinctOwners) {
  std::vector<ReviewRecord> records{rec(0, "a", "x"), rec(1, "a", "y"), rec(2, "b", "x")};
  auto s = dataset_stats(records);
  EXPECT_EQ(s.users, 2u);
  EXPECT_EQ(s.items, 2u);
  EXPECT_EQ(s.ratings, 3u);
  EXPECT_DOUBLE_EQ(s.density_percent, 75.0);
  EXPECT_THROW(dataset_stats(std::vector<ReviewRecord>{}), DataError);
}

std::vector<Pair> numbered_pairs(std::size_t n) {
  std::vector<Pair> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs[i].pair_id = i;
    pairs[i].rating = 1 + static_cast<double>(i % 5);
  }
  return pairs;
}

TEST(Batching, LastBatchMayBeShort) {
  auto pairs = numbered_pairs(250);
  auto batches = make_batches(pairs, 100);
  ASSERT_EQ(batches.size(), 3u);
  EXPECT_EQ(batches[0].size(), 100u);
  EXPECT_EQ(batches[1].size(), 100u);
  EXPECT_EQ(batches[2].size(), 50u);
  EXPECT_EQ(batches[2].pair_ids.front(), 200u);
  EXPECT_THROW(make_batches(pairs, 0), ConfigError);
}

TEST(Batching, ShuffleIsADeterministicPermutation) {
  auto pairs = numbered_pairs(97);
  auto a = make_batches(pairs, 10, 7);
  auto b = make_batches(pairs, 10, 7);
  std::vector<std::size_t> flat_a, flat_b;
  for (const auto& x : a) flat_a.insert(flat_a.end(), x.pair_ids.begin(), x.pair_ids.end());
  for (const auto& x : b) flat_b.insert(flat_b.end(), x.pair_ids.begin(), x.pair_ids.end());
  EXPECT_EQ(flat_a, flat_b);
  std::vector<std::size_t> identity(97);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  EXPECT_NE(flat_a, identity);
  std::sort(flat_a.begin(), flat_a.end());
  EXPECT_EQ(flat_a, identity);
}

TEST(Batching, CarriesPairFields) {
  std::vector<Pair> pairs(1);
  pairs[0].pair_id = 4;
  pairs[0].user = 2;
  pairs[0].item = 3;
  pairs[0].rating = 5;
  pairs[0].user_slot = 1;
  auto batches = make_batches(pairs, 8);
  ASSERT_EQ(batches.size(), 1u);
  EXPECT_EQ(batches[0].users, std::vector<std::size_t>{2});
  EXPECT_EQ(batches[0].items, std::vector<std::size_t>{3});
  EXPECT_EQ(batches[0].ratings, std::vector<double>{5});
  EXPECT_EQ(batches[0].user_excluded_slot[0], 1u);
  EXPECT_FALSE(batches[0].item_excluded_slot[0]);
}

}  // namespace
}  // namespace sifn::corpus
