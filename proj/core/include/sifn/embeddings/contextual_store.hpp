// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sifn/corpus/dataset.hpp"
#include "sifn/embeddings/store.hpp"

namespace sifn::embeddings {

// Matrix file layout: "SIFNEMB1", u32 k, u32 l, then one l x k float32
// row-major block per review, then a CRC32 of all preceding bytes.
// Index file: JSON lines {"owner_id": str, "ordinal": int, "offset": int},
// offset being the byte position of the review's block in the matrix file.
inline constexpr std::string_view kContextualMagic = "SIFNEMB1";
inline constexpr std::size_t kContextualHeaderBytes = 16;

/// Accumulates per-review matrices and writes the store files.
class ContextualStoreWriter {
 public:
  ContextualStoreWriter(std::size_t k, std::size_t l);

  /// `matrix` holds l*k values, row-major.
  void add(const ReviewKey& key, std::span<const float> matrix);
  void write(const std::filesystem::path& index_path, const std::filesystem::path& matrix_path) const;

 private:
  std::size_t k_;
  std::size_t l_;
  std::vector<ReviewKey> keys_;
  std::vector<float> values_;
};

/// Read-only precomputed contextual word vectors.
class ContextualStore final : public EmbeddingStore {
 public:
  Backend backend() const override { return Backend::kContextualStore; }
  std::size_t dim() const override { return k_; }
  std::size_t l() const { return l_; }
  std::size_t size() const { return offsets_.size(); }

  ag::Tensor encode(std::span<const SlotRef> slots, std::size_t l) const override;

  bool contains(const ReviewKey& key) const;
  /// The stored l*k block; throws DataError naming the key when absent.
  std::span<const float> lookup(const ReviewKey& key) const;

  friend std::shared_ptr<ContextualStore> load_contextual_store(const std::filesystem::path&,
                                                                const std::filesystem::path&,
                                                                std::optional<std::size_t>);

 private:
  std::size_t k_ = 0;
  std::size_t l_ = 0;
  std::vector<float> values_;
  std::map<std::pair<std::string, std::size_t>, std::size_t> offsets_;  // key -> first float
};

/// Loads and validates (magic, CRC, offsets strictly increasing and
/// block-aligned, optional expected width).
std::shared_ptr<ContextualStore> load_contextual_store(const std::filesystem::path& index_path,
                                                       const std::filesystem::path& matrix_path,
                                                       std::optional<std::size_t> expected_k = std::nullopt);

struct StoreCoverage {
  std::size_t slots = 0;
  std::size_t resolved = 0;
  std::vector<ReviewKey> missing;
  double fraction() const { return slots == 0 ? 1.0 : static_cast<double>(resolved) / static_cast<double>(slots); }
};

/// Scans every real profile slot of `dataset` against the store index.
StoreCoverage scan_coverage(const ContextualStore& store, const corpus::Dataset& dataset);

}  // namespace sifn::embeddings
