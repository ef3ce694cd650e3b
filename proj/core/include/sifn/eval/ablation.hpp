// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sifn/corpus/dataset.hpp"
#include "sifn/embeddings/factory.hpp"
#include "sifn/model/variant.hpp"
#include "sifn/train/trainer.hpp"

namespace sifn::eval {

inline constexpr int kAblationSchemaVersion = 1;

struct AblationConfig {
  train::TrainConfig base;  // variant and seed are overridden per run
  std::vector<std::uint64_t> seeds{42};
  std::vector<model::Variant> variants{model::kAllVariants.begin(), model::kAllVariants.end()};
};

struct AblationRow {
  model::Variant variant = model::Variant::kFull;
  std::vector<double> test_mse;  // one per seed, seed order
  double median_mse = 0.0;
  /// median_mse minus the full model's median (the stacked part of the bar).
  double increment = 0.0;
};

struct AblationReport {
  std::string dataset;
  std::vector<std::uint64_t> seeds;
  std::vector<AblationRow> rows;  // variant order

  const AblationRow& row(model::Variant v) const;
};

/// Trains and tests every variant for every seed on the dataset's one
/// split. Runs are independent and may execute in parallel.
AblationReport run_ablation(const AblationConfig& config, const corpus::Dataset& dataset,
                            const embeddings::StoreSpec& store, std::string dataset_name);

/// ablation.json: per-variant MSEs, medians and bar-chart increments.
std::string ablation_json(const AblationReport& report);

}  // namespace sifn::eval
