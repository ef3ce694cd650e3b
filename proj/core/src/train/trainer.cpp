// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/train/trainer.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "sifn/common/errors.hpp"
#include "sifn/common/parallel.hpp"
#include "sifn/common/random.hpp"
#include "sifn/eval/metrics.hpp"
#include "sifn/train/adam.hpp"

namespace sifn::train {

namespace {

constexpr std::uint64_t kStoreStream = 0x57;
constexpr std::uint64_t kShuffleStream = 0x5F;

std::uint64_t store_seed(std::uint64_t seed) { return hash_key({seed, kStoreStream}); }

double selection_mse(const model::SifnModel& model, const corpus::Dataset& dataset,
                     const std::vector<corpus::Pair>& pairs) {
  std::vector<double> targets;
  targets.reserve(pairs.size());
  for (const auto& p : pairs) targets.push_back(p.rating);
  return eval::mse(model::predict_pairs(model, dataset, pairs), targets);
}

}  // namespace

void TrainConfig::validate() const {
  if (k == 0) throw ConfigError("k must be positive");
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (lambda_grid.empty()) throw ConfigError("lambda grid is empty");
  for (double v : lambda_grid) {
    if (!(v >= 0.0)) throw ConfigError("lambda grid values must be nonnegative");
  }
  if (clip_norm && !(*clip_norm > 0.0)) throw ConfigError("clip norm must be positive");
}

std::string history_line(const EpochRecord& r) {
  nlohmann::ordered_json j;
  j["epoch"] = r.epoch;
  j["loss"] = r.loss;
  j["rating_loss"] = r.rating_loss;
  j["sentiment_loss"] = r.sentiment_loss;
  j["val_mse"] = r.val_mse;
  if (r.seconds) j["seconds"] = *r.seconds;
  return j.dump();
}

model::ModelConfig model_config(const TrainConfig& config, const corpus::Dataset& dataset) {
  model::ModelConfig mc;
  mc.k = config.k;
  mc.m = dataset.m();
  mc.l = dataset.l();
  mc.num_users = dataset.profiles.users.size();
  mc.num_items = dataset.profiles.items.size();
  mc.variant = config.variant;
  mc.lambda = config.lambda;
  mc.dropout = config.dropout;
  mc.seed = config.seed;
  return mc;
}

std::vector<corpus::Pair> selection_pairs(const corpus::Dataset& dataset) {
  auto pairs = dataset.pairs_in(corpus::SplitTag::kValidation);
  if (pairs.empty()) pairs = dataset.pairs_in(corpus::SplitTag::kTrain);
  return pairs;
}

TrainResult train(const TrainConfig& config, const corpus::Dataset& dataset, const embeddings::StoreSpec& store,
                  const EpochCallback& on_epoch) {
  config.validate();
  const auto spec = embeddings::resolve_for_variant(store, config.variant);
  model::SifnModel model(model_config(config, dataset),
                         embeddings::open_store(spec, dataset, config.k, store_seed(config.seed)));
  const auto train_pairs = dataset.pairs_in(corpus::SplitTag::kTrain);
  if (train_pairs.empty()) throw DataError("dataset has no training pairs");
  const auto val_pairs = selection_pairs(dataset);

  TrainResult result;
  double best_mse = selection_mse(model, dataset, val_pairs);
  result.best = model::make_checkpoint(model, spec, 0, best_mse);
  result.last = result.best;

  AdamOptions adam;
  adam.learning_rate = config.learning_rate;
  adam.clip_norm = config.clip_norm;
  AdamState state;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const auto batches = corpus::make_batches(train_pairs, config.batch_size,
                                              hash_key({config.seed, epoch, kShuffleStream}));
    EpochRecord rec;
    rec.epoch = epoch;
    try {
      for (std::size_t bi = 0; bi < batches.size(); ++bi) {
        const auto inputs = model::make_inputs(batches[bi], dataset);
        const auto out = model.forward(inputs, {true, epoch, bi});
        const double loss = out.losses.total.item();
        if (!std::isfinite(loss)) {
          throw NumericError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " + std::to_string(bi));
        }
        model.params().zero_grad();
        out.losses.total.backward();
        adam_step(model.params(), state, adam);
        const double w = static_cast<double>(batches[bi].size()) / static_cast<double>(train_pairs.size());
        rec.loss += w * loss;
        rec.rating_loss += w * out.losses.rating.item();
        rec.sentiment_loss += w * out.losses.sentiment.item();
      }
      rec.val_mse = selection_mse(model, dataset, val_pairs);
      if (!std::isfinite(rec.val_mse)) throw NumericError("non-finite validation MSE at epoch " + std::to_string(epoch));
    } catch (const NumericError& e) {
      result.aborted = e.what();
      return result;
    }
    result.last = model::make_checkpoint(model, spec, static_cast<std::int64_t>(epoch), rec.val_mse);
    if (config.record_seconds) {
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (rec.val_mse < best_mse) {
      best_mse = rec.val_mse;
      result.best = model::make_checkpoint(model, spec, static_cast<std::int64_t>(epoch), best_mse);
      since_best = 0;
    } else if (++since_best >= config.patience) {
      result.stopped_early = epoch < config.max_epochs;
      break;
    }
  }
  return result;
}

model::SifnModel instantiate(const model::Checkpoint& checkpoint, const corpus::Dataset& dataset) {
  auto cfg = checkpoint.config;
  if (cfg.m != dataset.m() || cfg.l != dataset.l()) {
    throw ConfigError("checkpoint was trained with m=" + std::to_string(cfg.m) + ", l=" + std::to_string(cfg.l) +
                      "; dataset has m=" + std::to_string(dataset.m()) + ", l=" + std::to_string(dataset.l()));
  }
  if (cfg.num_users != dataset.profiles.users.size() || cfg.num_items != dataset.profiles.items.size()) {
    throw ConfigError("checkpoint ID tables do not match the dataset's profiles");
  }
  model::SifnModel model(cfg, embeddings::open_store(checkpoint.store, dataset, cfg.k, store_seed(cfg.seed)));
  model::restore(checkpoint, model);
  return model;
}

LambdaReport tune_lambda(const TrainConfig& config, const corpus::Dataset& dataset,
                         const embeddings::StoreSpec& store) {
  config.validate();
  LambdaReport report;
  report.trials.resize(config.lambda_grid.size());
  parallel_for(config.lambda_grid.size(), [&](std::size_t i) {
    auto cfg = config;
    cfg.lambda = config.lambda_grid[i];
    const auto run = train(cfg, dataset, store);
    if (run.aborted) throw NumericError("lambda=" + std::to_string(cfg.lambda) + ": " + *run.aborted);
    report.trials[i] = {cfg.lambda, run.best.val_mse, run.best.best_epoch};
  });
  const LambdaTrial* best = &report.trials.front();
  for (const auto& t : report.trials) {
    if (t.val_mse < best->val_mse || (t.val_mse == best->val_mse && t.lambda < best->lambda)) best = &t;
  }
  report.best_lambda = best->lambda;
  return report;
}

}  // namespace sifn::train
