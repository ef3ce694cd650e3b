// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/model/grad_instance.hpp"

#include <algorithm>

#include "sifn/common/errors.hpp"
#include "sifn/common/random.hpp"
#include "sifn/corpus/synth.hpp"
#include "sifn/embeddings/store.hpp"

namespace sifn::model {

GradInstance make_grad_instance(const GradInstanceConfig& config) {
  if (config.batch == 0) throw ConfigError("gradient check needs a nonempty batch");
  corpus::SynthConfig sc;
  sc.users = std::max<std::size_t>(3, config.batch);
  sc.items = std::max<std::size_t>(3, config.m + 1);
  sc.density = 1.0;
  sc.vocab_size = 6;
  sc.review_length = config.l + 1;  // longer than l: truncation is part of the instance
  sc.seed = config.seed;
  corpus::PreprocessConfig pc;
  pc.min_reviews = 1;
  pc.m = config.m;
  pc.l = config.l;
  pc.ratios = {1.0, 0.0, 0.0};
  pc.seed = config.seed;

  GradInstance g;
  g.dataset = std::make_unique<corpus::Dataset>(corpus::preprocess(corpus::generate_synthetic(sc), pc));
  const auto train = g.dataset->pairs_in(corpus::SplitTag::kTrain);
  if (train.size() < config.batch) throw ConfigError("gradient-check dataset is smaller than the batch");
  corpus::Batch batch;
  // Spread the batch over distinct users.
  for (std::size_t i = 0; i < config.batch; ++i) batch.push_back(train[(i * train.size()) / config.batch]);

  ModelConfig mc;
  mc.k = config.k;
  mc.m = config.m;
  mc.l = config.l;
  mc.num_users = g.dataset->profiles.users.size();
  mc.num_items = g.dataset->profiles.items.size();
  mc.variant = config.variant;
  mc.lambda = config.lambda;
  mc.dropout = 0.0;
  mc.seed = config.seed;
  mc.init_stddev = config.init_stddev;

  std::shared_ptr<embeddings::EmbeddingStore> store;
  if (build_variant(config.variant).static_word_vectors) {
    Rng rng(hash_key({config.seed, 0x61}));
    std::vector<double> table(g.dataset->vocab.size() * config.k, 0.0);
    for (std::size_t i = config.k; i < table.size(); ++i) table[i] = normal(rng, 0.0, config.init_stddev);
    store = std::make_shared<embeddings::TableStore>(
        ag::Tensor::from({g.dataset->vocab.size(), config.k}, std::move(table)), false);
  } else {
    store = embeddings::init_trainable_table(g.dataset->vocab, config.k, hash_key({config.seed, 0x62}));
    auto values = store->parameters().front().tensor;
    Rng rng(hash_key({config.seed, 0x63}));
    auto data = values.mutable_data();
    for (std::size_t i = config.k; i < data.size(); ++i) data[i] = normal(rng, 0.0, config.init_stddev);
  }
  g.model = std::make_unique<SifnModel>(mc, store);
  // Biases start at zero for training; give them values here so their
  // gradients are checked away from the symmetric point.
  Rng rng(hash_key({config.seed, 0x64}));
  for (auto& p : g.model->params().entries()) {
    if (p.name == "word_embeddings") continue;
    for (auto& v : p.tensor.mutable_data()) v = normal(rng, 0.0, config.init_stddev);
  }
  g.inputs = make_inputs(batch, *g.dataset);
  return g;
}

ag::GradCheckReport check_model_gradients(const GradInstanceConfig& config, const ag::GradCheckOptions& options) {
  auto g = make_grad_instance(config);
  const auto params = g.model->params().named_tensors();
  return ag::grad_check([&] { return g.model->forward(g.inputs).losses.total; }, params, options);
}

}  // namespace sifn::model
