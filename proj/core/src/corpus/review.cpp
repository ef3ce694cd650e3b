// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/review.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "sifn/common/errors.hpp"

namespace sifn::corpus {

std::string_view to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kNegative:
      return "negative";
    case SentimentLabel::kNeutral:
      return "neutral";
    case SentimentLabel::kPositive:
      return "positive";
  }
  return "unknown";
}

SentimentLabel derive_sentiment_label(double rating) {
  const double tenths = std::round(rating * 10.0);
  if (!std::isfinite(rating) || tenths < 10.0 || tenths > 50.0) {
    throw DomainError("rating " + std::to_string(rating) + " outside [1, 5]");
  }
  if (tenths > 30.0) return SentimentLabel::kPositive;
  if (tenths < 30.0) return SentimentLabel::kNegative;
  return SentimentLabel::kNeutral;
}

std::optional<ReviewRecord> parse_review_line(std::string_view line) {
  auto doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;

  auto str_field = [&](const char* key) -> const nlohmann::json* {
    auto it = doc.find(key);
    return it != doc.end() && it->is_string() ? &*it : nullptr;
  };
  const auto* user = str_field("reviewerID");
  const auto* item = str_field("asin");
  const auto* text = str_field("reviewText");
  auto overall = doc.find("overall");
  if (!user || !item || !text || overall == doc.end() || !overall->is_number()) return std::nullopt;

  ReviewRecord r;
  r.user_id = user->get<std::string>();
  r.item_id = item->get<std::string>();
  r.text = text->get<std::string>();
  r.rating = overall->get<double>();
  if (r.user_id.empty() || r.item_id.empty() || !(r.rating >= 1.0 && r.rating <= 5.0)) return std::nullopt;
  if (auto ts = doc.find("unixReviewTime"); ts != doc.end()) {
    if (!ts->is_number_integer()) return std::nullopt;
    r.timestamp = ts->get<std::int64_t>();
  }
  return r;
}

ParseReport parse_reviews(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read review file " + path.string());

  ParseReport report;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++report.lines;
    if (auto rec = parse_review_line(line)) {
      rec->id = report.records.size();
      report.records.push_back(std::move(*rec));
    } else {
      ++report.invalid_lines;
    }
  }
  if (report.lines == 0) {
    report.warnings.push_back("no reviews found in " + path.string());
    return report;
  }
  if (report.invalid_lines * 2 > report.lines) {
    throw DataError(std::to_string(report.invalid_lines) + " of " + std::to_string(report.lines) +
                    " lines in " + path.string() +
                    " are not valid reviews; expected JSON lines with reviewerID, asin, overall, reviewText");
  }
  if (report.invalid_lines > 0) {
    report.warnings.push_back("skipped " + std::to_string(report.invalid_lines) + " invalid lines");
  }
  return report;
}

}  // namespace sifn::corpus
