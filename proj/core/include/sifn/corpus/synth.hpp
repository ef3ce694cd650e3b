// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sifn/corpus/review.hpp"

// Planted-signal review generator. Ratings are a linear function of user
// and item latent factors plus Gaussian noise, rounded to whole stars.
// Each review is filler words plus sentiment words whose polarity follows
// the label of the review's own rating.

namespace sifn::corpus {

struct SynthConfig {
  std::size_t users = 20;
  std::size_t items = 10;
  /// Probability that a (user, item) pair is rated.
  double density = 0.8;
  std::size_t latent_dim = 2;
  /// Gaussian noise added to the rating before rounding.
  double noise = 0.1;
  /// Distinct filler words.
  std::size_t vocab_size = 50;
  /// Words per review, sentiment words included.
  std::size_t review_length = 8;
  std::size_t sentiment_words = 1;
  /// When false, sentiment words are drawn at random, independent of the rating.
  bool sentiment_signal = true;
  std::uint64_t seed = 1;
};

inline constexpr std::array<std::string_view, 5> kPositiveWords = {"love", "great", "excellent", "perfect",
                                                                   "amazing"};
inline constexpr std::array<std::string_view, 5> kNeutralWords = {"okay", "average", "fine", "decent", "ordinary"};
inline constexpr std::array<std::string_view, 5> kNegativeWords = {"hated", "awful", "terrible", "broken", "poor"};

bool is_sentiment_word(std::string_view token);
const std::array<std::string_view, 5>& sentiment_words(SentimentLabel label);

std::vector<ReviewRecord> generate_synthetic(const SynthConfig& config);

/// One raw-format JSON object per record (reviewerID, asin, overall,
/// reviewText, unixReviewTime), readable by parse_reviews.
std::string review_json_line(const ReviewRecord& record);
void write_reviews(const std::filesystem::path& path, const std::vector<ReviewRecord>& records);

/// Word vectors in GloVe text format for every word the generator can
/// emit. Component 0 carries the polarity of sentiment words (+1, 0, -1);
/// the rest is N(0, 1/dim) noise.
void write_synthetic_vectors(const std::filesystem::path& path, const SynthConfig& config, std::size_t dim);

}  // namespace sifn::corpus
