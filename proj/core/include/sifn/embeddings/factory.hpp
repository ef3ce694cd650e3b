// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "sifn/corpus/dataset.hpp"
#include "sifn/embeddings/store.hpp"
#include "sifn/model/variant.hpp"

namespace sifn::embeddings {

/// Where a run's word vectors come from.
struct StoreSpec {
  Backend backend = Backend::kTrainableTable;
  std::size_t dim = 0;       // filled in once a store is opened
  std::string word_vectors;  // GloVe-format text file (static backend)
  std::string store_index;   // contextual store index (JSONL)
  std::string store_matrix;  // contextual store matrix (SIFNEMB1)
};

/// The spec a variant actually runs with: the static-vector variant swaps
/// whatever backend is configured for the static table.
StoreSpec resolve_for_variant(StoreSpec spec, model::Variant variant);

/// Opens (or, for the trainable backend, freshly initializes) a store.
/// Trainable tables are never shared between runs.
std::shared_ptr<EmbeddingStore> open_store(const StoreSpec& spec, const corpus::Dataset& dataset, std::size_t k,
                                           std::uint64_t seed);

}  // namespace sifn::embeddings
