// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/model/checkpoint.hpp"

#include <cstring>

#include "sifn/common/binary_io.hpp"
#include "sifn/common/crc32.hpp"
#include "sifn/common/errors.hpp"

namespace sifn::model {

namespace {

constexpr std::uint32_t kNoFrozenRow = 0xFFFFFFFFu;

std::uint32_t values_crc(std::span<const double> values) { return crc32(std::as_bytes(values)); }

std::uint32_t to_u32(std::size_t v, const char* what) {
  if (v > 0xFFFFFFFEu) throw DataError(std::string(what) + " does not fit the checkpoint format");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Checkpoint make_checkpoint(const SifnModel& model, embeddings::StoreSpec store, std::int64_t best_epoch, double val_mse) {
  Checkpoint c;
  c.config = model.config();
  c.store = std::move(store);
  c.store.backend = model.store().backend();
  c.store.dim = model.store().dim();
  c.best_epoch = best_epoch;
  c.val_mse = val_mse;
  c.params = model.params().clone();
  return c;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  ByteWriter w;
  w.put_magic(kCheckpointMagic);
  w.put_u32(kCheckpointVersion);
  const auto& cfg = ck.config;
  w.put_u32(to_u32(cfg.k, "k"));
  w.put_u32(to_u32(cfg.m, "m"));
  w.put_u32(to_u32(cfg.l, "l"));
  w.put_string(to_string(cfg.variant));
  w.put_f64(cfg.lambda);
  w.put_i64(static_cast<std::int64_t>(cfg.seed));
  w.put_f64(cfg.dropout);
  w.put_f64(cfg.init_stddev);
  w.put_u32(to_u32(cfg.num_users, "user count"));
  w.put_u32(to_u32(cfg.num_items, "item count"));
  w.put_string(embeddings::to_string(ck.store.backend));
  w.put_u32(to_u32(ck.store.dim, "store width"));
  w.put_string(ck.store.word_vectors);
  w.put_string(ck.store.store_index);
  w.put_string(ck.store.store_matrix);
  w.put_i64(ck.best_epoch);
  w.put_f64(ck.val_mse);

  const auto& entries = ck.params.entries();
  w.put_u32(to_u32(entries.size(), "parameter count"));
  for (const auto& p : entries) {
    w.put_string(p.name);
    const auto& shape = p.tensor.shape();
    w.put_u32(to_u32(shape.size(), "rank"));
    for (auto d : shape) w.put_u32(to_u32(d, "dimension"));
    w.put_u8(p.frozen_row ? 1 : 0);
    w.put_u32(p.frozen_row ? to_u32(*p.frozen_row, "frozen row") : kNoFrozenRow);
    const auto values = p.tensor.data();
    w.put_u32(values_crc(values));
    for (double v : values) w.put_f64(v);
  }
  w.put_trailing_crc();
  write_file_atomic(path, w.bytes());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  const auto file = read_file_bytes(path);
  const std::string what = "checkpoint " + path.string();
  ByteReader r(verify_trailing_crc(file, what));
  r.expect_magic(kCheckpointMagic, what);
  const auto version = r.u32();
  if (version != kCheckpointVersion) {
    throw DataError(what + ": unsupported version " + std::to_string(version));
  }
  Checkpoint ck;
  auto& cfg = ck.config;
  cfg.k = r.u32();
  cfg.m = r.u32();
  cfg.l = r.u32();
  cfg.variant = variant_from_string(r.string());
  cfg.lambda = r.f64();
  cfg.seed = static_cast<std::uint64_t>(r.i64());
  cfg.dropout = r.f64();
  cfg.init_stddev = r.f64();
  cfg.num_users = r.u32();
  cfg.num_items = r.u32();
  ck.store.backend = embeddings::backend_from_string(r.string());
  ck.store.dim = r.u32();
  ck.store.word_vectors = r.string();
  ck.store.store_index = r.string();
  ck.store.store_matrix = r.string();
  ck.best_epoch = r.i64();
  ck.val_mse = r.f64();

  const auto count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    auto name = r.string();
    const auto rank = r.u32();
    if (rank == 0 || rank > 4) throw DataError(what + ": parameter '" + name + "' has rank " + std::to_string(rank));
    ag::Shape shape(rank);
    for (auto& d : shape) d = r.u32();
    const bool frozen = r.u8() != 0;
    const auto frozen_row = r.u32();
    const auto crc = r.u32();
    std::vector<double> values(ag::numel(shape));
    for (auto& v : values) v = r.f64();
    if (values_crc(values) != crc) throw DataError(what + ": checksum mismatch in parameter '" + name + "'");
    ck.params.add(std::move(name), ag::Tensor::from(std::move(shape), std::move(values)),
                  frozen ? std::optional<std::size_t>(frozen_row) : std::nullopt);
  }
  if (r.remaining() != 0) throw DataError(what + ": trailing bytes after parameters");
  return ck;
}

void restore(const Checkpoint& checkpoint, SifnModel& model) {
  const auto expected = model.params().names();
  if (expected != checkpoint.params.names()) {
    throw ConfigError("checkpoint parameters do not match the " + display_name(model.config().variant) + " model");
  }
  model.params().assign_values(checkpoint.params);
}

}  // namespace sifn::model
