// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "sifn/common/binary_io.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/corpus/tokenizer.hpp"

namespace sifn::corpus {

Vocabulary::Vocabulary() {
  add(kPadToken);
  add(kUnkToken);
}

std::size_t Vocabulary::add(std::string_view token) {
  auto [it, inserted] = index_.try_emplace(std::string(token), tokens_.size());
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

std::size_t Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnkId : it->second;
}

bool Vocabulary::contains(std::string_view token) const { return index_.contains(std::string(token)); }

const std::string& Vocabulary::token(std::size_t id) const {
  if (id >= tokens_.size()) throw DomainError("token id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

std::vector<std::size_t> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id(t));
  return ids;
}

std::vector<std::string> Vocabulary::detokenize(std::span<const std::size_t> ids) const {
  std::vector<std::string> out;
  for (auto i : ids) {
    if (i > kUnkId) out.push_back(token(i));
  }
  return out;
}

void Vocabulary::save_tsv(const std::filesystem::path& path) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) out << tokens_[i] << '\t' << i << '\n';
  write_file_atomic(path, out.str());
}

Vocabulary Vocabulary::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read vocabulary " + path.string());
  Vocabulary v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw DataError(path.string() + ":" + std::to_string(line_no) + ": missing TAB");
    const std::string token = line.substr(0, tab);
    const auto id = std::stoull(line.substr(tab + 1));
    if (v.add(token) != id) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": id " + std::to_string(id) +
                      " out of sequence for token '" + token + "'");
    }
  }
  return v;
}

Vocabulary build_vocab(std::span<const ReviewRecord> records, std::size_t min_freq) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : records) {
    for (auto& t : tokenize(r.text)) ++counts[std::move(t)];
  }
  std::vector<std::pair<std::string, std::size_t>> ordered(counts.begin(), counts.end());
  // std::map iteration is alphabetical, so a stable sort by count keeps ties alphabetical.
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (const auto& [token, count] : ordered) {
    if (count >= min_freq && token != kPadToken && token != kUnkToken) v.add(token);
  }
  return v;
}

}  // namespace sifn::corpus
