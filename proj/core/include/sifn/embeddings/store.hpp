// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sifn/autograd/grad_check.hpp"
#include "sifn/autograd/tensor.hpp"
#include "sifn/corpus/profiles.hpp"
#include "sifn/corpus/vocab.hpp"

namespace sifn::embeddings {

enum class Backend { kStaticTable, kTrainableTable, kContextualStore };

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view name);

/// Identifies one profile review: the owner and its slot ordinal.
struct ReviewKey {
  std::string owner_id;
  std::size_t ordinal = 0;

  std::string to_string() const;
  bool operator==(const ReviewKey&) const = default;
};

/// One review to encode. Pad slots encode to all-zero rows.
struct SlotRef {
  const corpus::TokenizedReview* review = nullptr;
  ReviewKey key;
  bool real = false;
};

/// Maps tokenized reviews to l x dim word-vector matrices.
class EmbeddingStore {
 public:
  virtual ~EmbeddingStore() = default;

  virtual Backend backend() const = 0;
  virtual std::size_t dim() const = 0;

  /// Stacked word vectors [slots.size() * l, dim]. Rows at pad positions are
  /// exactly zero; for trainable backends the result is part of the graph.
  virtual ag::Tensor encode(std::span<const SlotRef> slots, std::size_t l) const = 0;

  /// Trainable tensors owned by the store.
  virtual std::vector<ag::NamedTensor> parameters() const { return {}; }
};

/// encode() of a single review, shaped [l, dim].
ag::Tensor encode_review(const EmbeddingStore& store, const corpus::TokenizedReview& review,
                         const ReviewKey& key = {});

/// Static or trainable word table indexed by vocabulary id. Row PAD is
/// always zero and never updated.
class TableStore final : public EmbeddingStore {
 public:
  TableStore(ag::Tensor table, bool trainable);

  Backend backend() const override { return trainable_ ? Backend::kTrainableTable : Backend::kStaticTable; }
  std::size_t dim() const override { return table_.dim(1); }
  ag::Tensor encode(std::span<const SlotRef> slots, std::size_t l) const override;
  std::vector<ag::NamedTensor> parameters() const override;

  const ag::Tensor& table() const { return table_; }
  std::span<const double> row(std::size_t id) const;

  static constexpr std::string_view kParamName = "word_embeddings";

 private:
  ag::Tensor table_;
  bool trainable_;
};

struct StaticTableReport {
  std::size_t vocab_size = 0;
  std::size_t found = 0;  // vocabulary tokens present in the file (PAD/UNK excluded)
  std::size_t file_vectors = 0;
  double coverage() const;
};

/// GloVe-style text vectors "token v1 ... vk". Vocabulary tokens missing
/// from the file are drawn from N(0, 0.01^2) with `seed`.
std::shared_ptr<TableStore> load_static_table(const std::filesystem::path& path, const corpus::Vocabulary& vocab,
                                              std::uint64_t seed = 0, StaticTableReport* report = nullptr);

/// Trainable table with N(0, 0.01^2) entries and a frozen zero PAD row.
std::shared_ptr<TableStore> init_trainable_table(const corpus::Vocabulary& vocab, std::size_t k, std::uint64_t seed);

}  // namespace sifn::embeddings
