// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sifn::corpus {

/// One observed (user, item, rating, text) interaction.
struct ReviewRecord {
  std::size_t id = 0;  // stable position in the parsed input
  std::string user_id;
  std::string item_id;
  double rating = 0.0;  // [1, 5]
  std::string text;
  std::optional<std::int64_t> timestamp;
};

enum class SentimentLabel : std::uint8_t { kNegative = 0, kNeutral = 1, kPositive = 2 };
inline constexpr std::size_t kNumSentimentClasses = 3;

std::string_view to_string(SentimentLabel label);

/// Threshold-3 polarity: above 3 stars positive, below negative, exactly 3
/// neutral. Ratings are rounded to one decimal before comparison.
/// Throws DomainError outside [1, 5].
SentimentLabel derive_sentiment_label(double rating);

struct ParseReport {
  std::vector<ReviewRecord> records;
  std::size_t lines = 0;  // non-blank lines seen
  std::size_t invalid_lines = 0;
  std::vector<std::string> warnings;
};

/// Parses one line of the Amazon JSON-lines review schema. Returns nullopt
/// when a required field is missing, mistyped or out of range.
std::optional<ReviewRecord> parse_review_line(std::string_view line);

/// Reads a JSON-lines file. Invalid lines are counted and skipped; more than
/// half invalid aborts with DataError (likely the wrong format).
ParseReport parse_reviews(const std::filesystem::path& path);

}  // namespace sifn::corpus
