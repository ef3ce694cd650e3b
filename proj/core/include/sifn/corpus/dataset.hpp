// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sifn/corpus/batching.hpp"
#include "sifn/corpus/profiles.hpp"
#include "sifn/corpus/review.hpp"
#include "sifn/corpus/split.hpp"
#include "sifn/corpus/stats.hpp"
#include "sifn/corpus/vocab.hpp"

namespace sifn::corpus {

struct PreprocessConfig {
  std::size_t min_reviews = 5;
  std::size_t m = 10;
  std::size_t l = 100;
  std::size_t min_freq = 1;
  SplitRatios ratios;
  std::uint64_t seed = 42;
};

struct PreprocessReport {
  std::size_t input_records = 0;
  std::size_t dropped_empty = 0;
  std::size_t kept_records = 0;
  std::size_t train_pairs = 0;
  std::size_t validation_pairs = 0;
  std::size_t test_pairs = 0;
  // Held-out pairs whose user/item has no training review.
  std::size_t cold_start_users = 0;
  std::size_t cold_start_items = 0;
};

/// A preprocessed dataset: vocabulary, training-split profiles and every
/// pair tagged with its split.
struct Dataset {
  static constexpr std::uint32_t kProfilesVersion = 1;
  static constexpr int kSchemaVersion = 1;

  PreprocessConfig config;
  Vocabulary vocab;
  Profiles profiles;
  std::vector<Pair> pairs;
  std::vector<std::string> pair_texts;  // aligned with pairs
  DatasetStats stats;
  PreprocessReport report;

  std::size_t m() const { return profiles.users.m(); }
  std::size_t l() const { return profiles.users.l(); }
  std::vector<Pair> pairs_in(SplitTag tag) const;

  /// Writes vocab.tsv, splits.jsonl, profiles.bin and stats.json.
  void save(const std::filesystem::path& dir) const;
  static Dataset load(const std::filesystem::path& dir);
};

/// Drops reviews without tokens, k-core filters, splits, and builds the
/// vocabulary and profiles from the training split only.
Dataset preprocess(std::vector<ReviewRecord> records, const PreprocessConfig& config);

}  // namespace sifn::corpus
