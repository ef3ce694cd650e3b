// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/profiles.hpp"

#include <algorithm>
#include <map>

#include "sifn/common/errors.hpp"
#include "sifn/corpus/tokenizer.hpp"

namespace sifn::corpus {

TokenizedReview TokenizedReview::padding(std::size_t l) {
  return TokenizedReview{std::vector<std::size_t>(l, kPadId), 0, std::vector<std::uint8_t>(l, 0)};
}

TokenizedReview TokenizedReview::from_ids(std::span<const std::size_t> ids, std::size_t l) {
  auto r = padding(l);
  r.true_length = std::min(ids.size(), l);
  for (std::size_t i = 0; i < r.true_length; ++i) {
    r.token_ids[i] = ids[i];
    r.mask[i] = 1;
  }
  return r;
}

TokenizedReview tokenize_review(std::string_view text, const Vocabulary& vocab, std::size_t l) {
  const auto tokens = tokenize(text);
  return TokenizedReview::from_ids(vocab.encode(tokens), l);
}

std::size_t Profile::real_count() const {
  return static_cast<std::size_t>(std::count_if(slots.begin(), slots.end(), [](const auto& s) { return s.real; }));
}

std::vector<std::uint8_t> Profile::review_mask() const {
  std::vector<std::uint8_t> mask;
  mask.reserve(slots.size());
  for (const auto& s : slots) mask.push_back(s.real ? 1 : 0);
  return mask;
}

std::optional<std::size_t> Profile::slot_of_record(std::size_t record_id) const {
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (slots[j].real && slots[j].record_id == record_id) return j;
  }
  return std::nullopt;
}

Profile Profile::empty(std::string owner_id, std::size_t m, std::size_t l) {
  Profile p;
  p.owner_id = std::move(owner_id);
  p.slots.resize(m);
  for (auto& s : p.slots) s.review = TokenizedReview::padding(l);
  return p;
}

ProfileSet::ProfileSet(std::size_t m, std::size_t l) : m_(m), l_(l) {
  add(Profile::empty(std::string(kColdStartOwner), m, l));
}

std::size_t ProfileSet::add(Profile profile) {
  if (profile.slots.size() != m_) {
    throw DataError("profile for '" + profile.owner_id + "' has " + std::to_string(profile.slots.size()) +
                    " slots, expected " + std::to_string(m_));
  }
  const auto [it, inserted] = index_.try_emplace(profile.owner_id, profiles_.size());
  if (!inserted) throw DataError("duplicate profile owner '" + profile.owner_id + "'");
  profiles_.push_back(std::move(profile));
  return it->second;
}

std::size_t ProfileSet::find(std::string_view owner_id) const {
  auto it = index_.find(std::string(owner_id));
  return it == index_.end() ? kColdStart : it->second;
}

bool ProfileSet::contains(std::string_view owner_id) const {
  return owner_id != kColdStartOwner && index_.contains(std::string(owner_id));
}

namespace {

ProfileSet build_side(std::span<const ReviewRecord> records, std::size_t m, std::size_t l, const Vocabulary& vocab,
                      bool user_side) {
  // Owners in order of first appearance; reviews in input order.
  std::vector<std::string> owners;
  std::map<std::string, std::vector<const ReviewRecord*>> grouped;
  for (const auto& r : records) {
    const auto& owner = user_side ? r.user_id : r.item_id;
    auto [it, inserted] = grouped.try_emplace(owner);
    if (inserted) owners.push_back(owner);
    it->second.push_back(&r);
  }

  ProfileSet set(m, l);
  for (const auto& owner : owners) {
    auto reviews = grouped[owner];
    std::stable_sort(reviews.begin(), reviews.end(), [](const ReviewRecord* a, const ReviewRecord* b) {
      return a->timestamp.value_or(0) > b->timestamp.value_or(0);
    });
    Profile p = Profile::empty(owner, m, l);
    for (std::size_t j = 0; j < std::min(m, reviews.size()); ++j) {
      const ReviewRecord& r = *reviews[j];
      auto& slot = p.slots[j];
      slot.review = tokenize_review(r.text, vocab, l);
      if (slot.review.true_length == 0) {
        throw DataError("review " + std::to_string(r.id) + " has no tokens; drop empty reviews before profiling");
      }
      slot.real = true;
      slot.record_id = r.id;
      slot.rating = r.rating;
      slot.label = derive_sentiment_label(r.rating);
      slot.timestamp = r.timestamp.value_or(0);
      slot.text = r.text;
    }
    set.add(std::move(p));
  }
  return set;
}

}  // namespace

Profiles build_profiles(std::span<const ReviewRecord> train_records, std::size_t m, std::size_t l,
                        const Vocabulary& vocab) {
  if (m == 0 || l == 0) throw ConfigError("profile dimensions m and l must be positive");
  return Profiles{build_side(train_records, m, l, vocab, true), build_side(train_records, m, l, vocab, false)};
}

}  // namespace sifn::corpus
