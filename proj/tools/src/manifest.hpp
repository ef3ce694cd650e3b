// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace sifn::cli {

inline constexpr int kManifestSchemaVersion = 1;

struct RunManifest {
  /// Stamps the build id and the start time.
  explicit RunManifest(std::string subcommand_name);

  std::string subcommand;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();   // every setting, defaults included
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  std::string build_id;
  std::string started_at;
  std::string finished_at;

  nlohmann::ordered_json to_json() const;
  /// Stamps the end time and writes <dir>/manifest-<subcommand>.json atomically.
  std::filesystem::path finish(const std::filesystem::path& dir);
};

/// ISO-8601 UTC timestamp with second resolution.
std::string utc_now();

const char* build_id();

}  // namespace sifn::cli
