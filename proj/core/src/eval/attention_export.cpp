// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/eval/attention_export.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "sifn/common/binary_io.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/corpus/tokenizer.hpp"
#include "sifn/eval/metrics.hpp"

namespace sifn::eval {

namespace {

std::string safe_name(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '.';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void collect_side(const char* side, const corpus::ProfileSet& set, std::size_t owner,
                  const model::SideTrace& trace, const model::SideInputs& in, const corpus::Vocabulary& vocab,
                  std::vector<ReviewAttention>& out) {
  const std::size_t m = set.m();
  const std::size_t l = set.l();
  const auto& profile = set[owner];
  const auto alpha = trace.word_attention.data();
  const auto beta = trace.review_attention.data();
  for (std::size_t j = 0; j < m; ++j) {
    if (!in.review_mask.keep[j]) continue;
    const auto& slot = profile.slots[j];
    ReviewAttention r;
    r.side = side;
    r.slot = j;
    r.record_id = slot.record_id;
    r.rating = slot.rating;
    r.label = slot.label;
    r.beta = beta[j];
    if (trace.sentiment_logits.defined()) {
      r.predicted = static_cast<corpus::SentimentLabel>(
          argmax(trace.sentiment_logits.data().subspan(j * corpus::kNumSentimentClasses,
                                                       corpus::kNumSentimentClasses)));
    }
    const auto words = corpus::tokenize(slot.text);
    for (std::size_t t = 0; t < l; ++t) {
      if (!slot.review.mask[t]) continue;
      const std::string token = t < words.size() ? words[t] : vocab.token(slot.review.token_ids[t]);
      r.tokens.push_back({token, alpha[j * l + t]});
    }
    out.push_back(std::move(r));
  }
}

}  // namespace

const corpus::Pair& find_pair(const corpus::Dataset& dataset, std::string_view user_id, std::string_view item_id) {
  for (const auto& p : dataset.pairs) {
    if (p.user_id == user_id && p.item_id == item_id) return p;
  }
  throw DataError("unknown pair (" + std::string(user_id) + ", " + std::string(item_id) + ")");
}

AttentionReport attention_report(const model::SifnModel& model, const corpus::Dataset& dataset,
                                 const corpus::Pair& pair) {
  corpus::Batch batch;
  batch.push_back(pair);
  const auto inputs = model::make_inputs(batch, dataset);
  const auto result = model.forward(inputs);
  AttentionReport report;
  report.pair_id = pair.pair_id;
  report.user_id = pair.user_id;
  report.item_id = pair.item_id;
  report.predicted_rating = result.trace.prediction.item();
  report.true_rating = pair.rating;
  collect_side("user", dataset.profiles.users, pair.user, result.trace.user, inputs.user, dataset.vocab,
               report.reviews);
  collect_side("item", dataset.profiles.items, pair.item, result.trace.item, inputs.item, dataset.vocab,
               report.reviews);
  return report;
}

std::string attention_json(const AttentionReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kAttentionSchemaVersion;
  j["pair"] = report.pair_id;
  j["user"] = report.user_id;
  j["item"] = report.item_id;
  j["predicted_rating"] = report.predicted_rating;
  j["true_rating"] = report.true_rating;
  j["reviews"] = nlohmann::ordered_json::array();
  for (const auto& r : report.reviews) {
    nlohmann::ordered_json o;
    o["side"] = r.side;
    o["slot"] = r.slot;
    o["record"] = r.record_id;
    o["rating"] = r.rating;
    o["label"] = corpus::to_string(r.label);
    o["predicted_label"] = r.predicted ? nlohmann::ordered_json(corpus::to_string(*r.predicted)) : nullptr;
    o["beta"] = r.beta;
    o["tokens"] = nlohmann::ordered_json::array();
    for (const auto& t : r.tokens) o["tokens"].push_back({{"token", t.token}, {"alpha", t.alpha}});
    j["reviews"].push_back(o);
  }
  return j.dump(2) + "\n";
}

std::string attention_html(const AttentionReport& report) {
  std::ostringstream h;
  h << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" << html_escape(report.user_id) << " / "
    << html_escape(report.item_id) << "</title>\n"
    << "<style>body{font-family:sans-serif;max-width:60em;margin:2em auto}"
       ".review{margin:1em 0;padding:.5em;border-left:3px solid #ccc}"
       ".tok{padding:0 2px;border-radius:2px}.meta{color:#666;font-size:.85em}</style></head><body>\n";
  h << "<h1>" << html_escape(report.user_id) << " &rarr; " << html_escape(report.item_id) << "</h1>\n";
  h << "<p>predicted rating " << fixed(report.predicted_rating, 2) << ", true rating "
    << fixed(report.true_rating, 1) << "</p>\n";
  for (const auto& r : report.reviews) {
    double peak = 0.0;
    for (const auto& t : r.tokens) peak = std::max(peak, t.alpha);
    h << "<div class=\"review\"><div class=\"meta\">" << r.side << " review " << r.slot << ", rating "
      << fixed(r.rating, 1) << ", label " << corpus::to_string(r.label);
    if (r.predicted) h << ", predicted " << corpus::to_string(*r.predicted);
    h << ", &beta; = " << fixed(r.beta, 4) << "</div>\n<p>";
    for (const auto& t : r.tokens) {
      const double opacity = peak > 0.0 ? t.alpha / peak : 0.0;
      h << "<span class=\"tok\" title=\"" << fixed(t.alpha, 4) << "\" style=\"background:rgba(220,50,47,"
        << fixed(opacity, 3) << ")\">" << html_escape(t.token) << "</span> ";
    }
    h << "</p></div>\n";
  }
  h << "</body></html>\n";
  return h.str();
}

std::vector<std::filesystem::path> export_attention(const model::SifnModel& model, const corpus::Dataset& dataset,
                                                    std::span<const corpus::Pair> pairs,
                                                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& pair : pairs) {
    const auto report = attention_report(model, dataset, pair);
    const auto stem = safe_name(pair.user_id) + "_" + safe_name(pair.item_id);
    write_file_atomic(dir / (stem + ".json"), attention_json(report));
    write_file_atomic(dir / (stem + ".html"), attention_html(report));
    written.push_back(dir / (stem + ".json"));
  }
  return written;
}

}  // namespace sifn::eval
