// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/embeddings/factory.hpp"

#include "sifn/common/errors.hpp"
#include "sifn/embeddings/contextual_store.hpp"
#include "sifn/model/variant.hpp"

namespace sifn::embeddings {

StoreSpec resolve_for_variant(StoreSpec spec, model::Variant variant) {
  if (model::build_variant(variant).static_word_vectors) {
    if (spec.word_vectors.empty()) {
      throw ConfigError("variant " + model::display_name(variant) + " needs --word-vectors");
    }
    spec.backend = Backend::kStaticTable;
  }
  return spec;
}

std::shared_ptr<EmbeddingStore> open_store(const StoreSpec& spec, const corpus::Dataset& dataset, std::size_t k,
                                           std::uint64_t seed) {
  switch (spec.backend) {
    case Backend::kTrainableTable:
      return init_trainable_table(dataset.vocab, k, seed);
    case Backend::kStaticTable:
      if (spec.word_vectors.empty()) throw ConfigError("static backend needs a word-vector file");
      return load_static_table(spec.word_vectors, dataset.vocab, seed);
    case Backend::kContextualStore: {
      if (spec.store_index.empty() || spec.store_matrix.empty()) {
        throw ConfigError("contextual backend needs both the store index and matrix files");
      }
      auto store = load_contextual_store(spec.store_index, spec.store_matrix);
      if (store->l() != dataset.l()) {
        throw DataError("contextual store was built with l=" + std::to_string(store->l()) + ", dataset uses l=" +
                        std::to_string(dataset.l()));
      }
      return store;
    }
  }
  throw ConfigError("unknown embedding backend");
}

}  // namespace sifn::embeddings
