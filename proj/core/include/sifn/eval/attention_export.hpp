// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sifn/corpus/dataset.hpp"
#include "sifn/model/sifn_model.hpp"

namespace sifn::eval {

inline constexpr int kAttentionSchemaVersion = 1;

struct TokenAttention {
  std::string token;
  double alpha = 0.0;
};

struct ReviewAttention {
  std::string side;  // "user" or "item"
  std::size_t slot = 0;
  std::size_t record_id = 0;
  double rating = 0.0;
  corpus::SentimentLabel label = corpus::SentimentLabel::kNeutral;
  std::optional<corpus::SentimentLabel> predicted;  // absent without a sentiment head
  double beta = 0.0;
  std::vector<TokenAttention> tokens;  // real tokens only
};

struct AttentionReport {
  std::size_t pair_id = 0;
  std::string user_id;
  std::string item_id;
  double predicted_rating = 0.0;
  double true_rating = 0.0;
  std::vector<ReviewAttention> reviews;  // user slots, then item slots; masked slots omitted
};

/// Throws DataError("unknown pair ...") when no pair matches.
const corpus::Pair& find_pair(const corpus::Dataset& dataset, std::string_view user_id, std::string_view item_id);

/// Eval-mode forward of one pair, read back from the trace.
AttentionReport attention_report(const model::SifnModel& model, const corpus::Dataset& dataset,
                                 const corpus::Pair& pair);

std::string attention_json(const AttentionReport& report);
/// Static page shading each token by alpha / max(alpha) of its review.
std::string attention_html(const AttentionReport& report);

/// Writes <dir>/<user>_<item>.json and .html per pair; returns the JSON paths.
std::vector<std::filesystem::path> export_attention(const model::SifnModel& model, const corpus::Dataset& dataset,
                                                    std::span<const corpus::Pair> pairs,
                                                    const std::filesystem::path& dir);

}  // namespace sifn::eval
