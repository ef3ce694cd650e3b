// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "sifn/common/errors.hpp"
#include "sifn/corpus/review.hpp"
#include "temp_dir.hpp"

namespace sifn::corpus {
namespace {

using testing::TempDir;

TEST(ParseReviewLine, MapsAmazonFields) {
  auto r = parse_review_line(R"({"reviewerID":"A1","asin":"B1","overall":5.0,"reviewText":"love it"})");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->user_id, "A1");
  EXPECT_EQ(r->item_id, "B1");
  EXPECT_EQ(r->rating, 5.0);
  EXPECT_EQ(r->text, "love it");
  EXPECT_FALSE(r->timestamp);
}

TEST(ParseReviewLine, ReadsTimestamp) {
  auto r = parse_review_line(
      R"({"reviewerID":"A1","asin":"B1","overall":2,"reviewText":"x","unixReviewTime":1400000000})");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->timestamp, 1400000000);
}

TEST(ParseReviewLine, RejectsMalformed) {
  EXPECT_FALSE(parse_review_line("not json"));
  EXPECT_FALSE(parse_review_line(R"({"reviewerID":"A1","asin":"B1","overall":5.0})"));
  EXPECT_FALSE(parse_review_line(R"({"reviewerID":"A1","asin":"B1","overall":"5","reviewText":"x"})"));
  EXPECT_FALSE(parse_review_line(R"({"reviewerID":"A1","asin":"B1","overall":6.0,"reviewText":"x"})"));
  EXPECT_FALSE(parse_review_line(R"({"reviewerID":"","asin":"B1","overall":4.0,"reviewText":"x"})"));
  EXPECT_FALSE(parse_review_line(R"([1,2])"));
}

TEST(ParseReviews, EmptyFileWarns) {
  TempDir dir;
  auto report = parse_reviews(dir.write("empty.jsonl", ""));
  EXPECT_TRUE(report.records.empty());
  EXPECT_EQ(report.warnings.size(), 1u);
}

TEST(ParseReviews, SkipsInvalidLinesAndCountsThem) {
  TempDir dir;
  auto path = dir.write("r.jsonl",
                        "{\"reviewerID\":\"A1\",\"asin\":\"B1\",\"overall\":5.0,\"reviewText\":\"a\"}\n"
                        "\n"
                        "garbage\n"
                        "{\"reviewerID\":\"A2\",\"asin\":\"B1\",\"overall\":1.0,\"reviewText\":\"b\"}\n");
  auto report = parse_reviews(path);
  EXPECT_EQ(report.lines, 3u);
  EXPECT_EQ(report.invalid_lines, 1u);
  ASSERT_EQ(report.records.size(), 2u);
  EXPECT_EQ(report.records[0].id, 0u);
  EXPECT_EQ(report.records[1].id, 1u);
  EXPECT_EQ(report.records[1].user_id, "A2");
}

TEST(ParseReviews, MostlyInvalidAborts) {
  TempDir dir;
  auto path = dir.write("r.jsonl",
                        "{\"reviewerID\":\"A1\",\"asin\":\"B1\",\"overall\":5.0,\"reviewText\":\"a\"}\nx\ny\n");
  EXPECT_THROW(parse_reviews(path), DataError);
}

TEST(ParseReviews, MissingFile) {
  TempDir dir;
  EXPECT_THROW(parse_reviews(dir / "absent.jsonl"), DataError);
}

TEST(SentimentLabel, ThresholdRule) {
  EXPECT_EQ(derive_sentiment_label(5.0), SentimentLabel::kPositive);
  EXPECT_EQ(derive_sentiment_label(3.0), SentimentLabel::kNeutral);
  EXPECT_EQ(derive_sentiment_label(2.0), SentimentLabel::kNegative);
}

TEST(SentimentLabel, ParsedThreeIsNeutral) {
  EXPECT_EQ(derive_sentiment_label(0.1 * 30), SentimentLabel::kNeutral);
  EXPECT_EQ(derive_sentiment_label(2.9999999999), SentimentLabel::kNeutral);
}

TEST(SentimentLabel, PartitionsTheRange) {
  int counts[3] = {0, 0, 0};
  for (int tenths = 10; tenths <= 50; ++tenths) {
    const auto label = derive_sentiment_label(tenths / 10.0);
    ++counts[static_cast<int>(label)];
    if (tenths < 30) EXPECT_EQ(label, SentimentLabel::kNegative) << tenths;
    if (tenths == 30) EXPECT_EQ(label, SentimentLabel::kNeutral);
    if (tenths > 30) EXPECT_EQ(label, SentimentLabel::kPositive) << tenths;
  }
  EXPECT_EQ(counts[0] + counts[1] + counts[2], 41);
  EXPECT_EQ(counts[1], 1);
}

TEST(SentimentLabel, OutOfRange) {
  EXPECT_THROW(derive_sentiment_label(0.5), DomainError);
  EXPECT_THROW(derive_sentiment_label(5.5), DomainError);
  EXPECT_THROW(derive_sentiment_label(std::nan("")), DomainError);
}

TEST(SentimentLabel, Names) {
  EXPECT_EQ(to_string(SentimentLabel::kNegative), "negative");
  EXPECT_EQ(to_string(SentimentLabel::kNeutral), "neutral");
  EXPECT_EQ(to_string(SentimentLabel::kPositive), "positive");
}

}  // namespace
}  // namespace sifn::corpus
