// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sifn/embeddings/factory.hpp"
#include "sifn/model/params.hpp"
#include "sifn/model/sifn_model.hpp"

namespace sifn::model {

inline constexpr std::string_view kCheckpointMagic = "SIFNCKPT";
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelConfig config;
  embeddings::StoreSpec store;  // so a checkpoint can be reopened against the same store
  std::int64_t best_epoch = 0;  // 0 = initialization
  double val_mse = 0.0;
  ParameterSet params;

  std::size_t parameter_count() const { return params.scalar_count(); }
};

/// Snapshot of a model's current parameter values.
Checkpoint make_checkpoint(const SifnModel& model, embeddings::StoreSpec store, std::int64_t best_epoch, double val_mse);

/// Binary layout: magic, u32 version, config echo, store info, u32 count,
/// then per parameter {name, u32 rank, u32 dims, u8 frozen flag, u32
/// frozen row, u32 CRC of the values, f64 values}; a trailing CRC covers
/// the whole file.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Copies checkpoint values into `model`; names and shapes must match.
void restore(const Checkpoint& checkpoint, SifnModel& model);

}  // namespace sifn::model
