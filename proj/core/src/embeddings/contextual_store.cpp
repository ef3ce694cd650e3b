// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/embeddings/contextual_store.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sifn/common/binary_io.hpp"
#include "sifn/common/errors.hpp"

namespace sifn::embeddings {

using nlohmann::json;

ContextualStoreWriter::ContextualStoreWriter(std::size_t k, std::size_t l) : k_(k), l_(l) {
  if (k == 0 || l == 0) throw ConfigError("contextual store dimensions must be positive");
}

void ContextualStoreWriter::add(const ReviewKey& key, std::span<const float> matrix) {
  if (matrix.size() != k_ * l_) {
    throw ShapeError("contextual block for " + key.to_string() + " has " + std::to_string(matrix.size()) +
                     " values, expected " + std::to_string(k_ * l_));
  }
  keys_.push_back(key);
  values_.insert(values_.end(), matrix.begin(), matrix.end());
}

void ContextualStoreWriter::write(const std::filesystem::path& index_path,
                                  const std::filesystem::path& matrix_path) const {
  ByteWriter w;
  w.put_magic(kContextualMagic);
  w.put_u32(static_cast<std::uint32_t>(k_));
  w.put_u32(static_cast<std::uint32_t>(l_));
  std::ostringstream index;
  const std::size_t block = k_ * l_;
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    json line = {{"owner_id", keys_[i].owner_id}, {"ordinal", keys_[i].ordinal}, {"offset", w.size()}};
    index << line.dump() << '\n';
    for (std::size_t j = 0; j < block; ++j) w.put_f32(values_[i * block + j]);
  }
  w.put_trailing_crc();
  write_file_atomic(matrix_path, w.bytes());
  write_file_atomic(index_path, index.str());
}

std::shared_ptr<ContextualStore> load_contextual_store(const std::filesystem::path& index_path,
                                                       const std::filesystem::path& matrix_path,
                                                       std::optional<std::size_t> expected_k) {
  const auto raw = read_file_bytes(matrix_path);
  ByteReader r(verify_trailing_crc(raw, matrix_path.string()));
  r.expect_magic(kContextualMagic, matrix_path.string());
  auto store = std::shared_ptr<ContextualStore>(new ContextualStore());
  store->k_ = r.u32();
  store->l_ = r.u32();
  if (store->k_ == 0 || store->l_ == 0) throw DataError(matrix_path.string() + ": zero k or l in header");
  if (expected_k && *expected_k != store->k_) {
    throw DataError(matrix_path.string() + ": width " + std::to_string(store->k_) + " does not match expected " +
                    std::to_string(*expected_k));
  }
  const std::size_t block_bytes = store->k_ * store->l_ * 4;
  const std::size_t body = r.remaining();
  if (body % block_bytes != 0) throw DataError(matrix_path.string() + ": payload is not a whole number of blocks");
  store->values_.reserve(body / 4);
  while (r.remaining() > 0) store->values_.push_back(r.f32());

  std::ifstream in(index_path);
  if (!in) throw DataError("cannot read contextual index " + index_path.string());
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> previous;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = index_path.string() + ":" + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("owner_id") || !j.contains("ordinal") || !j.contains("offset")) {
      throw DataError(where + ": malformed index entry");
    }
    const std::size_t offset = j.at("offset");
    if (previous && offset <= *previous) throw DataError(where + ": offsets must be strictly increasing");
    if (offset < kContextualHeaderBytes || (offset - kContextualHeaderBytes) % block_bytes != 0 ||
        offset + block_bytes > kContextualHeaderBytes + body) {
      throw DataError(where + ": offset " + std::to_string(offset) + " is not a block boundary");
    }
    previous = offset;
    auto key = std::make_pair(j.at("owner_id").get<std::string>(), j.at("ordinal").get<std::size_t>());
    if (!store->offsets_.emplace(key, (offset - kContextualHeaderBytes) / 4).second) {
      throw DataError(where + ": duplicate key " + key.first + "#" + std::to_string(key.second));
    }
  }
  return store;
}

bool ContextualStore::contains(const ReviewKey& key) const {
  return offsets_.contains({key.owner_id, key.ordinal});
}

std::span<const float> ContextualStore::lookup(const ReviewKey& key) const {
  auto it = offsets_.find({key.owner_id, key.ordinal});
  if (it == offsets_.end()) throw DataError("contextual store has no entry for review " + key.to_string());
  return std::span(values_).subspan(it->second, k_ * l_);
}

ag::Tensor ContextualStore::encode(std::span<const SlotRef> slots, std::size_t l) const {
  if (l != l_) {
    throw ShapeError("contextual store was built with l=" + std::to_string(l_) + ", model uses l=" + std::to_string(l));
  }
  std::vector<double> out(slots.size() * l * k_, 0.0);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (!slots[s].real || slots[s].review == nullptr) continue;
    const auto block = lookup(slots[s].key);
    for (std::size_t i = 0; i < l; ++i) {
      if (!slots[s].review->mask[i]) continue;
      for (std::size_t j = 0; j < k_; ++j) out[(s * l + i) * k_ + j] = block[i * k_ + j];
    }
  }
  return ag::Tensor::from({slots.size() * l, k_}, std::move(out));
}

StoreCoverage scan_coverage(const ContextualStore& store, const corpus::Dataset& dataset) {
  StoreCoverage cov;
  for (const auto* set : {&dataset.profiles.users, &dataset.profiles.items}) {
    for (const auto& profile : set->profiles()) {
      for (std::size_t j = 0; j < profile.slots.size(); ++j) {
        if (!profile.slots[j].real) continue;
        ++cov.slots;
        ReviewKey key{profile.owner_id, j};
        if (store.contains(key)) {
          ++cov.resolved;
        } else {
          cov.missing.push_back(std::move(key));
        }
      }
    }
  }
  return cov;
}

}  // namespace sifn::embeddings
