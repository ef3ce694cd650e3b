// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sifn/autograd/ops.hpp"
#include "sifn/autograd/tensor.hpp"
#include "sifn/corpus/batching.hpp"
#include "sifn/corpus/dataset.hpp"
#include "sifn/embeddings/store.hpp"
#include "sifn/model/params.hpp"
#include "sifn/model/variant.hpp"

namespace sifn::model {

struct ModelConfig {
  std::size_t k = 16;
  std::size_t m = 10;
  std::size_t l = 100;
  // ID table rows, including the cold-start row 0.
  std::size_t num_users = 1;
  std::size_t num_items = 1;
  Variant variant = Variant::kFull;
  double lambda = 1.0;
  double dropout = 0.2;
  std::uint64_t seed = 42;
  double init_stddev = 0.01;
};

/// One tower's view of a batch: B owners, each with m slots of l words.
struct SideInputs {
  std::vector<std::size_t> ids;                    // B
  std::vector<embeddings::SlotRef> slots;          // B*m
  ag::Mask word_mask;                              // [B*m, l]
  ag::Mask review_mask;                            // [B, m]
  std::vector<corpus::SentimentLabel> labels;      // B*m, meaningful where review_mask is set
};

struct ModelInputs {
  std::size_t batch_size = 0;
  SideInputs user;
  SideInputs item;
  std::vector<double> ratings;  // B
};

/// Gathers the profiles referenced by `batch`. A pair's own review slot
/// (training pairs only) is masked out of both profiles.
ModelInputs make_inputs(const corpus::Batch& batch, const corpus::Dataset& dataset);

struct ForwardOptions {
  bool training = false;  // enables dropout
  std::uint64_t epoch = 0;
  std::uint64_t batch = 0;
};

struct SideTrace {
  ag::Tensor word_attention;    // alpha [B*m, l]
  ag::Tensor review_vectors;    // s [B*m, k]
  ag::Tensor sentiment_logits;  // [B*m, C]; undefined without the sentiment task
  ag::Tensor review_attention;  // beta [B, m]
  ag::Tensor aggregate;         // d [B, k]
  ag::Tensor id_embedding;      // e [B, k]
};

struct ForwardTrace {
  SideTrace user;
  SideTrace item;
  ag::Tensor fusion;      // f [B, k]; undefined when the variant has no fusion term
  ag::Tensor preference;  // p [B, k]; undefined for the FM head
  ag::Tensor prediction;  // [B, 1]
};

struct Losses {
  ag::Tensor total;
  ag::Tensor rating;
  ag::Tensor sentiment;  // constant 0 without the sentiment task
};

struct ForwardResult {
  ForwardTrace trace;
  Losses losses;
};

class SifnModel {
 public:
  /// Registers and initializes every parameter the variant uses. A
  /// trainable store contributes its table; a store narrower or wider than
  /// k adds a learned projection.
  SifnModel(ModelConfig config, std::shared_ptr<embeddings::EmbeddingStore> store);

  const ModelConfig& config() const { return config_; }
  const VariantSpec& spec() const { return spec_; }
  ParameterSet& params() { return params_; }
  const ParameterSet& params() const { return params_; }
  const embeddings::EmbeddingStore& store() const { return *store_; }
  std::shared_ptr<embeddings::EmbeddingStore> store_handle() const { return store_; }

  void set_lambda(double lambda);
  /// lambda as applied to the joint loss (0 without the sentiment task).
  double effective_lambda() const;

  ForwardResult forward(const ModelInputs& inputs, const ForwardOptions& options = {}) const;

  /// Raw predictions, no dropout, no graph retained.
  std::vector<double> predict(const ModelInputs& inputs) const;

  /// Sentiment class probabilities [N * C] for free-standing reviews,
  /// averaged over the user and item towers. Needs the sentiment head and
  /// a table backend (the contextual store only covers profile slots).
  std::vector<double> classify_reviews(std::span<const corpus::TokenizedReview> reviews) const;

  /// Scalar count implied by the shapes of the variant's parameters.
  static std::size_t expected_parameter_count(const ModelConfig& config, std::size_t store_dim,
                                              std::optional<std::size_t> trainable_vocab);

 private:
  SideTrace run_side(const char* side, const SideInputs& in, const ag::Tensor& id_table,
                     const ForwardOptions& options, std::uint64_t site) const;

  ModelConfig config_;
  VariantSpec spec_;
  std::shared_ptr<embeddings::EmbeddingStore> store_;
  ParameterSet params_;
};

/// Eval-mode predictions for `pairs`, in order, computed in batches.
std::vector<double> predict_pairs(const SifnModel& model, const corpus::Dataset& dataset,
                                  std::span<const corpus::Pair> pairs, std::size_t batch_size = 256);

}  // namespace sifn::model
