// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sifn/corpus/dataset.hpp"
#include "sifn/embeddings/factory.hpp"
#include "sifn/model/checkpoint.hpp"
#include "sifn/model/sifn_model.hpp"

namespace sifn::train {

struct TrainConfig {
  std::size_t k = 16;
  std::size_t batch_size = 100;
  double learning_rate = 0.001;
  double dropout = 0.2;
  double lambda = 1.0;
  std::vector<double> lambda_grid{0.1, 1.0, 10.0};
  std::size_t max_epochs = 100;
  std::size_t patience = 10;
  std::uint64_t seed = 42;
  model::Variant variant = model::Variant::kFull;
  std::optional<double> clip_norm = 5.0;
  /// Adds wall-clock seconds to each epoch record. Off by default so that
  /// identical runs produce identical histories.
  bool record_seconds = false;

  /// Throws ConfigError on non-positive sizes, rates outside their range
  /// or an empty lambda grid.
  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;
  double rating_loss = 0.0;
  double sentiment_loss = 0.0;
  double val_mse = 0.0;
  std::optional<double> seconds;
};

/// One JSON object, no trailing newline.
std::string history_line(const EpochRecord& record);

struct TrainResult {
  model::Checkpoint best;  // lowest validation MSE seen, or the initialization
  model::Checkpoint last;  // parameters after the final completed epoch
  std::vector<EpochRecord> history;
  bool stopped_early = false;
  /// Set when training hit a non-finite loss or gradient; `best` still
  /// holds the last good checkpoint.
  std::optional<std::string> aborted;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

model::ModelConfig model_config(const TrainConfig& config, const corpus::Dataset& dataset);

/// Pairs used for model selection: the validation split, or the training
/// split when the validation split is empty.
std::vector<corpus::Pair> selection_pairs(const corpus::Dataset& dataset);

/// Adam over shuffled minibatches of the training pairs with validation
/// early stopping. Shuffling, initialization and dropout are all derived
/// from `config.seed`.
TrainResult train(const TrainConfig& config, const corpus::Dataset& dataset, const embeddings::StoreSpec& store,
                  const EpochCallback& on_epoch = {});

/// Rebuilds a model around a checkpoint's store and parameter values.
model::SifnModel instantiate(const model::Checkpoint& checkpoint, const corpus::Dataset& dataset);

struct LambdaTrial {
  double lambda = 0.0;
  double val_mse = 0.0;
  std::int64_t best_epoch = 0;
};

struct LambdaReport {
  std::vector<LambdaTrial> trials;  // grid order
  double best_lambda = 0.0;
};

/// One training run per grid value; the lowest validation MSE wins, ties
/// go to the smaller lambda.
LambdaReport tune_lambda(const TrainConfig& config, const corpus::Dataset& dataset,
                         const embeddings::StoreSpec& store);

}  // namespace sifn::train
