// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/eval/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sifn/common/binary_io.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/eval/metrics.hpp"

namespace sifn::eval {

Evaluation evaluate(const model::SifnModel& model, const corpus::Dataset& dataset, corpus::SplitTag split) {
  Evaluation ev;
  ev.method = model::display_name(model.config().variant);
  ev.split = split;
  std::vector<corpus::Pair> pairs;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < dataset.pairs.size(); ++i) {
    if (dataset.pairs[i].split != split) continue;
    pairs.push_back(dataset.pairs[i]);
    texts.push_back(i < dataset.pair_texts.size() ? dataset.pair_texts[i] : std::string());
  }
  if (pairs.empty()) throw DataError(std::string("no ") + std::string(corpus::to_string(split)) + " pairs");
  ev.pairs = pairs.size();
  std::vector<double> targets;
  for (const auto& p : pairs) targets.push_back(p.rating);
  ev.mse = mse(model::predict_pairs(model, dataset, pairs), targets);

  if (model.spec().sentiment_task && model.store().backend() != embeddings::Backend::kContextualStore) {
    std::vector<corpus::TokenizedReview> reviews;
    std::vector<corpus::SentimentLabel> labels;
    std::vector<std::uint8_t> keep;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      reviews.push_back(corpus::tokenize_review(texts[i], dataset.vocab, dataset.l()));
      labels.push_back(corpus::derive_sentiment_label(pairs[i].rating));
      keep.push_back(reviews.back().true_length > 0 ? 1 : 0);
    }
    if (std::find(keep.begin(), keep.end(), 1) != keep.end()) {
      ev.sentiment_accuracy = sentiment_accuracy(model.classify_reviews(reviews), corpus::kNumSentimentClasses,
                                                 labels, keep);
    }
  }
  return ev;
}

ResultTable load_results(const std::filesystem::path& path) {
  ResultTable table;
  if (!std::filesystem::exists(path)) return table;
  std::ifstream in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("results") || !j["results"].is_object()) {
    throw DataError(path.string() + ": not a results file");
  }
  for (const auto& [method, per] : j["results"].items()) {
    for (const auto& [ds, value] : per.items()) {
      if (!value.is_number()) throw DataError(path.string() + ": non-numeric MSE for " + method + "/" + ds);
      table[method][ds] = value.get<double>();
    }
  }
  return table;
}

void save_results(const std::filesystem::path& path, const ResultTable& table) {
  nlohmann::ordered_json j;
  j["schema_version"] = kResultsSchemaVersion;
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [method, per] : table) {
    for (const auto& [ds, value] : per) j["results"][method][ds] = value;
  }
  write_file_atomic(path, j.dump(2) + "\n");
}

std::vector<ResultRow> result_rows(const ResultTable& table, const std::string& reference) {
  const auto ref = table.find(reference);
  if (ref == table.end()) throw DataError("reference method " + reference + " has no results");
  std::vector<ResultRow> rows;
  for (const auto& [method, per] : table) {
    ResultRow row{method, per, {}};
    if (method != reference) {
      for (const auto& [ds, value] : per) {
        const auto it = ref->second.find(ds);
        if (it != ref->second.end()) row.improvement[ds] = relative_improvement(value, it->second);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_results(const std::vector<ResultRow>& rows) {
  std::set<std::string> datasets;
  for (const auto& r : rows) {
    for (const auto& [ds, v] : r.mse) datasets.insert(ds);
  }
  std::ostringstream out;
  out << "method";
  for (const auto& ds : datasets) out << '\t' << ds;
  out << '\n';
  for (const auto& r : rows) {
    out << r.method;
    for (const auto& ds : datasets) {
      out << '\t';
      const auto it = r.mse.find(ds);
      if (it == r.mse.end()) {
        out << '-';
        continue;
      }
      char cell[32];
      std::snprintf(cell, sizeof cell, "%.3f", it->second);
      out << cell;
      if (const auto imp = r.improvement.find(ds); imp != r.improvement.end()) {
        out << " (" << render_percent(imp->second) << ')';
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace sifn::eval
