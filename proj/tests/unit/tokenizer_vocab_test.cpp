// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include <gtest/gtest.h>

#include "sifn/common/errors.hpp"
#include "sifn/corpus/profiles.hpp"
#include "sifn/corpus/tokenizer.hpp"
#include "sifn/corpus/vocab.hpp"
#include "temp_dir.hpp"

namespace sifn::corpus {
namespace {

using Tokens = std::vector<std::string>;

ReviewRecord with_text(std::string text) {
  ReviewRecord r;
  r.user_id = "u";
  r.item_id = "i";
  r.rating = 4;
  r.text = std::move(text);
  return r;
}

TEST(Tokenize, LowercasesAndStripsSurroundingPunctuation) {
  EXPECT_EQ(tokenize("I LOVED it!!  (really)"), (Tokens{"i", "loved", "it", "really"}));
  EXPECT_EQ(tokenize("don't stop"), (Tokens{"don't", "stop"}));
  EXPECT_EQ(tokenize("... --- !!!"), Tokens{});
  EXPECT_EQ(tokenize(""), Tokens{});
}

TEST(Tokenize, SplitsOnUnicodeWhitespace) {
  EXPECT_EQ(tokenize("a b　c\td\ne"), (Tokens{"a", "b", "c", "d", "e"}));
  EXPECT_EQ(tokenize("café ok"), (Tokens{"café", "ok"}));
}

TEST(BuildVocab, FrequencyOrderTiesAlphabetical) {
  std::vector<ReviewRecord> records{with_text("a b"), with_text("a")};
  auto v = build_vocab(records, 1);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v.token(0), kPadToken);
  EXPECT_EQ(v.token(1), kUnkToken);
  EXPECT_EQ(v.id("a"), 2u);
  EXPECT_EQ(v.id("b"), 3u);

  std::vector<ReviewRecord> tied{with_text("zeta alpha mid")};
  auto t = build_vocab(tied, 1);
  EXPECT_EQ(t.token(2), "alpha");
  EXPECT_EQ(t.token(3), "mid");
  EXPECT_EQ(t.token(4), "zeta");
}

TEST(BuildVocab, MinFreqMapsRareTokensToUnk) {
  std::vector<ReviewRecord> records{with_text("a b"), with_text("a")};
  auto v = build_vocab(records, 2);
  EXPECT_EQ(v.size(), 3u);
  EXPECT_EQ(v.id("b"), kUnkId);
  EXPECT_FALSE(v.contains("b"));
}

TEST(Vocabulary, DetokenizeRoundTrip) {
  std::vector<ReviewRecord> records{with_text("The sound is GREAT, truly great."), with_text("poor build")};
  auto v = build_vocab(records, 1);
  for (const auto& r : records) {
    const auto tokens = tokenize(r.text);
    EXPECT_EQ(v.detokenize(v.encode(tokens)), tokens);
  }
}

TEST(Vocabulary, TsvRoundTrip) {
  testing::TempDir dir;
  std::vector<ReviewRecord> records{with_text("x y y z z z")};
  auto v = build_vocab(records, 1);
  v.save_tsv(dir / "vocab.tsv");
  auto back = Vocabulary::load_tsv(dir / "vocab.tsv");
  ASSERT_EQ(back.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(back.token(i), v.token(i));
  EXPECT_EQ(testing::read_text(dir / "vocab.tsv").substr(0, 8), "<pad>\t0\n");
}

TEST(Vocabulary, MalformedTsv) {
  testing::TempDir dir;
  EXPECT_THROW(Vocabulary::load_tsv(dir.write("v.tsv", "<pad> 0\n")), DataError);
  EXPECT_THROW(Vocabulary::load_tsv(dir / "missing.tsv"), DataError);
}

TEST(Vocabulary, TokenOutOfRange) {
  Vocabulary v;
  EXPECT_THROW(v.token(5), DomainError);
}

TEST(TokenizeReview, TruncatesAndPads) {
  std::vector<ReviewRecord> records{with_text("a b c d e f g")};
  auto v = build_vocab(records, 1);
  auto r = tokenize_review("a b c d e f g", v, 5);
  EXPECT_EQ(r.true_length, 5u);
  EXPECT_EQ(r.mask, (std::vector<std::uint8_t>{1, 1, 1, 1, 1}));
  EXPECT_EQ(r.token_ids[4], v.id("e"));

  auto short_review = tokenize_review("a unknownword", v, 4);
  EXPECT_EQ(short_review.true_length, 2u);
  EXPECT_EQ(short_review.token_ids, (std::vector<std::size_t>{v.id("a"), kUnkId, kPadId, kPadId}));
  EXPECT_EQ(short_review.mask, (std::vector<std::uint8_t>{1, 1, 0, 0}));
}

TEST(TokenizeReview, PaddingIsAllPad) {
  auto p = TokenizedReview::padding(3);
  EXPECT_EQ(p.true_length, 0u);
  EXPECT_EQ(p.token_ids, (std::vector<std::size_t>(3, kPadId)));
  EXPECT_EQ(p.mask, (std::vector<std::uint8_t>(3, 0)));
}

}  // namespace
}  // namespace sifn::corpus
