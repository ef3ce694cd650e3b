// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sifn/corpus/review.hpp"

namespace sifn::corpus {

inline constexpr std::size_t kPadId = 0;
inline constexpr std::size_t kUnkId = 1;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";

/// Token <-> id map with reserved ids 0 = PAD and 1 = UNK.
class Vocabulary {
 public:
  Vocabulary();

  /// Appends `token` if absent; returns its id.
  std::size_t add(std::string_view token);

  /// UNK id for unknown tokens.
  std::size_t id(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string& token(std::size_t id) const;
  std::size_t size() const { return tokens_.size(); }

  std::vector<std::size_t> encode(std::span<const std::string> tokens) const;
  /// Tokens of ids > 1; PAD and UNK are dropped.
  std::vector<std::string> detokenize(std::span<const std::size_t> ids) const;

  void save_tsv(const std::filesystem::path& path) const;
  static Vocabulary load_tsv(const std::filesystem::path& path);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Tokens ordered by descending frequency, ties alphabetical. Tokens seen
/// fewer than `min_freq` times are left out and therefore map to UNK.
Vocabulary build_vocab(std::span<const ReviewRecord> records, std::size_t min_freq = 1);

}  // namespace sifn::corpus
