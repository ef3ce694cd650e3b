// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/synth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "sifn/common/binary_io.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/common/random.hpp"

namespace sifn::corpus {

namespace {

std::string owner_name(char prefix, std::size_t i, std::size_t n) {
  const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
  std::string digits = std::to_string(i);
  return std::string(1, prefix) + std::string(width - std::min(width, digits.size()), '0') + digits;
}

std::string filler_word(std::size_t i) { return "w" + std::to_string(i); }

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

}  // namespace

bool is_sentiment_word(std::string_view token) {
  for (const auto* list : {&kPositiveWords, &kNeutralWords, &kNegativeWords}) {
    if (std::find(list->begin(), list->end(), token) != list->end()) return true;
  }
  return false;
}

const std::array<std::string_view, 5>& sentiment_words(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kNegative: return kNegativeWords;
    case SentimentLabel::kNeutral: return kNeutralWords;
    case SentimentLabel::kPositive: return kPositiveWords;
  }
  throw DomainError("unknown sentiment label");
}

std::vector<ReviewRecord> generate_synthetic(const SynthConfig& c) {
  if (c.users == 0 || c.items == 0) throw ConfigError("synth needs at least one user and one item");
  if (!(c.density > 0.0 && c.density <= 1.0)) throw ConfigError("synth density must lie in (0, 1]");
  if (c.latent_dim == 0 || c.vocab_size == 0) throw ConfigError("synth latent_dim and vocab_size must be positive");
  if (c.sentiment_words == 0 || c.sentiment_words > c.review_length) {
    throw ConfigError("synth needs 1 <= sentiment_words <= review_length");
  }
  if (!(c.noise >= 0.0)) throw ConfigError("synth noise must be nonnegative");

  Rng rng(hash_key({c.seed, 0x5E}));
  const double scale = 1.0 / std::sqrt(static_cast<double>(c.latent_dim));
  auto latent = [&](std::size_t n) {
    std::vector<double> v(n * c.latent_dim);
    for (auto& x : v) x = normal(rng, 0.0, 1.0);
    return v;
  };
  const auto pu = latent(c.users);
  const auto qi = latent(c.items);
  std::vector<double> user_bias(c.users), item_bias(c.items);
  for (auto& b : user_bias) b = normal(rng, 0.0, 0.5);
  for (auto& b : item_bias) b = normal(rng, 0.0, 0.5);

  std::vector<ReviewRecord> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::int64_t clock = 1'300'000'000;
  for (std::size_t u = 0; u < c.users; ++u) {
    for (std::size_t i = 0; i < c.items; ++i) {
      if (unit(rng) >= c.density) continue;
      double dot = 0.0;
      for (std::size_t d = 0; d < c.latent_dim; ++d) dot += pu[u * c.latent_dim + d] * qi[i * c.latent_dim + d];
      const double raw = 3.0 + user_bias[u] + item_bias[i] + scale * dot + normal(rng, 0.0, c.noise);
      const double rating = std::clamp(std::round(raw), 1.0, 5.0);

      const auto label = c.sentiment_signal ? derive_sentiment_label(rating)
                                            : static_cast<SentimentLabel>(pick(rng, kNumSentimentClasses));
      const auto& planted = sentiment_words(label);
      std::vector<std::string> words;
      for (std::size_t w = 0; w + c.sentiment_words < c.review_length; ++w) {
        words.push_back(filler_word(pick(rng, c.vocab_size)));
      }
      for (std::size_t s = 0; s < c.sentiment_words; ++s) {
        const auto at = static_cast<std::ptrdiff_t>(pick(rng, words.size() + 1));
        words.insert(words.begin() + at, std::string(planted[pick(rng, planted.size())]));
      }
      std::string text;
      for (const auto& w : words) text += (text.empty() ? "" : " ") + w;

      ReviewRecord r;
      r.id = out.size();
      r.user_id = owner_name('u', u, c.users);
      r.item_id = owner_name('i', i, c.items);
      r.rating = rating;
      r.text = std::move(text);
      clock += 60 + static_cast<std::int64_t>(pick(rng, 86'400));
      r.timestamp = clock;
      out.push_back(std::move(r));
    }
  }
  if (out.empty()) throw ConfigError("synth produced no ratings; raise the density");
  return out;
}

std::string review_json_line(const ReviewRecord& r) {
  nlohmann::ordered_json j;
  j["reviewerID"] = r.user_id;
  j["asin"] = r.item_id;
  j["overall"] = r.rating;
  j["reviewText"] = r.text;
  if (r.timestamp) j["unixReviewTime"] = *r.timestamp;
  return j.dump();
}

void write_reviews(const std::filesystem::path& path, const std::vector<ReviewRecord>& records) {
  std::string out;
  for (const auto& r : records) out += review_json_line(r) + "\n";
  write_file_atomic(path, out);
}

void write_synthetic_vectors(const std::filesystem::path& path, const SynthConfig& config, std::size_t dim) {
  if (dim == 0) throw ConfigError("vector width must be positive");
  Rng rng(hash_key({config.seed, 0x7EC}));
  const double sd = 1.0 / std::sqrt(static_cast<double>(dim));
  std::ostringstream out;
  out.precision(6);
  auto emit = [&](std::string_view word, double polarity) {
    out << word;
    for (std::size_t d = 0; d < dim; ++d) out << ' ' << (d == 0 ? polarity : normal(rng, 0.0, sd));
    out << '\n';
  };
  for (std::size_t i = 0; i < config.vocab_size; ++i) emit(filler_word(i), 0.0);
  for (auto w : kPositiveWords) emit(w, 1.0);
  for (auto w : kNeutralWords) emit(w, 0.0);
  for (auto w : kNegativeWords) emit(w, -1.0);
  write_file_atomic(path, out.str());
}

}  // namespace sifn::corpus
