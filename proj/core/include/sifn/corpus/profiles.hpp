// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sifn/corpus/review.hpp"
#include "sifn/corpus/vocab.hpp"

namespace sifn::corpus {

/// A review cut or padded to exactly l token ids.
struct TokenizedReview {
  std::vector<std::size_t> token_ids;  // length l, PAD-filled
  std::size_t true_length = 0;         // number of real tokens, <= l
  std::vector<std::uint8_t> mask;      // length l, 1 on real tokens

  static TokenizedReview padding(std::size_t l);
  static TokenizedReview from_ids(std::span<const std::size_t> ids, std::size_t l);
};

/// Tokenizes `text`, keeps the first `l` tokens and pads the rest.
TokenizedReview tokenize_review(std::string_view text, const Vocabulary& vocab, std::size_t l);

struct ProfileSlot {
  TokenizedReview review;
  bool real = false;
  std::size_t record_id = 0;
  double rating = 0.0;
  SentimentLabel label = SentimentLabel::kNeutral;
  std::int64_t timestamp = 0;
  std::string text;
};

/// The m review slots attached to one user or item.
struct Profile {
  std::string owner_id;
  std::vector<ProfileSlot> slots;  // exactly m

  std::size_t real_count() const;
  std::vector<std::uint8_t> review_mask() const;
  std::optional<std::size_t> slot_of_record(std::size_t record_id) const;

  static Profile empty(std::string owner_id, std::size_t m, std::size_t l);
};

/// Profiles of one side. Index 0 is the all-pad cold-start profile that
/// stands in for owners absent from the training split.
class ProfileSet {
 public:
  static constexpr std::size_t kColdStart = 0;
  static constexpr std::string_view kColdStartOwner = "<unk>";

  ProfileSet() = default;
  ProfileSet(std::size_t m, std::size_t l);

  std::size_t add(Profile profile);
  /// kColdStart for unknown owners.
  std::size_t find(std::string_view owner_id) const;
  bool contains(std::string_view owner_id) const;

  const Profile& operator[](std::size_t index) const { return profiles_.at(index); }
  std::size_t size() const { return profiles_.size(); }
  std::size_t m() const { return m_; }
  std::size_t l() const { return l_; }
  const std::vector<Profile>& profiles() const { return profiles_; }

 private:
  std::size_t m_ = 0;
  std::size_t l_ = 0;
  std::vector<Profile> profiles_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Profiles {
  ProfileSet users;
  ProfileSet items;
};

/// Builds one profile per training user and item: the `m` most recent
/// reviews (ties keep input order), each cut/padded to `l` tokens and
/// labelled from its own rating. Throws DataError on a review with no
/// tokens.
Profiles build_profiles(std::span<const ReviewRecord> train_records, std::size_t m, std::size_t l,
                        const Vocabulary& vocab);

}  // namespace sifn::corpus
