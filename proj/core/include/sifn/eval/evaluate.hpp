// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sifn/corpus/dataset.hpp"
#include "sifn/model/sifn_model.hpp"

namespace sifn::eval {

inline constexpr int kResultsSchemaVersion = 1;

struct Evaluation {
  std::string method;  // display name of the variant
  corpus::SplitTag split = corpus::SplitTag::kTest;
  std::size_t pairs = 0;
  double mse = 0.0;
  /// Accuracy of the sentiment head on the split's own review texts;
  /// absent without a sentiment head or with the contextual backend.
  std::optional<double> sentiment_accuracy;
};

Evaluation evaluate(const model::SifnModel& model, const corpus::Dataset& dataset,
                    corpus::SplitTag split = corpus::SplitTag::kTest);

/// method -> dataset -> MSE
using ResultTable = std::map<std::string, std::map<std::string, double>>;

/// Reads results.json; a missing file is an empty table.
ResultTable load_results(const std::filesystem::path& path);
void save_results(const std::filesystem::path& path, const ResultTable& table);

struct ResultRow {
  std::string method;
  std::map<std::string, double> mse;
  /// Improvement of the reference method over this row, per dataset (%).
  std::map<std::string, double> improvement;
};

/// Rows in table order; the reference row carries no improvements.
std::vector<ResultRow> result_rows(const ResultTable& table, const std::string& reference);

/// Plain-text table: one column per dataset, cells like "0.773 (+1.81%)".
std::string render_results(const std::vector<ResultRow>& rows);

}  // namespace sifn::eval
