// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/embeddings/store.hpp"

#include <fstream>
#include <sstream>

#include "sifn/autograd/ops.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/common/random.hpp"

namespace sifn::embeddings {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::kStaticTable:
      return "static";
    case Backend::kTrainableTable:
      return "trainable";
    case Backend::kContextualStore:
      return "contextual";
  }
  return "unknown";
}

Backend backend_from_string(std::string_view name) {
  if (name == "static") return Backend::kStaticTable;
  if (name == "trainable") return Backend::kTrainableTable;
  if (name == "contextual") return Backend::kContextualStore;
  throw ConfigError("unknown embedding backend '" + std::string(name) + "' (static, trainable, contextual)");
}

std::string ReviewKey::to_string() const { return owner_id + "#" + std::to_string(ordinal); }

ag::Tensor encode_review(const EmbeddingStore& store, const corpus::TokenizedReview& review, const ReviewKey& key) {
  const SlotRef slot{&review, key, review.true_length > 0};
  return store.encode(std::span(&slot, 1), review.token_ids.size());
}

TableStore::TableStore(ag::Tensor table, bool trainable) : table_(std::move(table)), trainable_(trainable) {
  if (table_.rank() != 2 || table_.dim(0) < 2) throw ShapeError("word table must be [vocab >= 2, k]");
  table_.set_requires_grad(trainable_);
}

std::span<const double> TableStore::row(std::size_t id) const {
  return table_.data().subspan(id * dim(), dim());
}

ag::Tensor TableStore::encode(std::span<const SlotRef> slots, std::size_t l) const {
  std::vector<std::size_t> ids;
  ids.reserve(slots.size() * l);
  for (const auto& s : slots) {
    if (!s.real || s.review == nullptr) {
      ids.insert(ids.end(), l, corpus::kPadId);
      continue;
    }
    if (s.review->token_ids.size() != l) throw ShapeError("review length does not match l");
    for (std::size_t i = 0; i < l; ++i) ids.push_back(s.review->mask[i] ? s.review->token_ids[i] : corpus::kPadId);
  }
  return ag::gather_rows(table_, ids, corpus::kPadId);
}

std::vector<ag::NamedTensor> TableStore::parameters() const {
  if (!trainable_) return {};
  return {{std::string(kParamName), table_}};
}

double StaticTableReport::coverage() const {
  const auto real_tokens = vocab_size > 2 ? vocab_size - 2 : 0;
  return real_tokens == 0 ? 0.0 : static_cast<double>(found) / static_cast<double>(real_tokens);
}

std::shared_ptr<TableStore> load_static_table(const std::filesystem::path& path, const corpus::Vocabulary& vocab,
                                              std::uint64_t seed, StaticTableReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read word vectors " + path.string());

  std::size_t k = 0;
  std::vector<std::vector<double>> rows(vocab.size());
  StaticTableReport rep;
  rep.vocab_size = vocab.size();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::vector<double> values;
    double v;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-numeric vector entry");
    if (values.empty()) throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty vector");
    if (k == 0) k = values.size();
    if (values.size() != k) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": vector has " +
                      std::to_string(values.size()) + " entries, expected " + std::to_string(k));
    }
    ++rep.file_vectors;
    if (!vocab.contains(token)) continue;
    const auto id = vocab.id(token);
    if (id <= corpus::kUnkId) continue;
    if (rows[id].empty()) ++rep.found;
    rows[id] = std::move(values);
  }
  if (k == 0) throw DataError("no vectors in " + path.string());

  Rng rng(seed);
  std::vector<double> data(vocab.size() * k, 0.0);
  for (std::size_t id = 1; id < vocab.size(); ++id) {
    for (std::size_t j = 0; j < k; ++j) {
      data[id * k + j] = rows[id].empty() ? normal(rng, 0.0, 0.01) : rows[id][j];
    }
  }
  if (report) *report = rep;
  return std::make_shared<TableStore>(ag::Tensor::from({vocab.size(), k}, std::move(data)), false);
}

std::shared_ptr<TableStore> init_trainable_table(const corpus::Vocabulary& vocab, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("embedding width k must be at least 1");
  Rng rng(seed);
  std::vector<double> data(vocab.size() * k, 0.0);
  for (std::size_t i = k; i < data.size(); ++i) data[i] = normal(rng, 0.0, 0.01);
  return std::make_shared<TableStore>(ag::Tensor::from({vocab.size(), k}, std::move(data)), true);
}

}  // namespace sifn::embeddings
