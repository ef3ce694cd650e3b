// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <utility>

#include "sifn/common/binary_io.hpp"

#ifndef SIFN_BUILD_ID
#define SIFN_BUILD_ID "unknown"
#endif

namespace sifn::cli {

RunManifest::RunManifest(std::string subcommand_name)
    : subcommand(std::move(subcommand_name)), build_id(SIFN_BUILD_ID), started_at(utc_now()) {}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kManifestSchemaVersion;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["seed"] = seed;
  j["build_id"] = build_id;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  return j;
}

std::filesystem::path RunManifest::finish(const std::filesystem::path& dir) {
  finished_at = utc_now();
  const auto path = dir / ("manifest-" + subcommand + ".json");
  write_file_atomic(path, to_json().dump(2) + "\n");
  return path;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}


}  // namespace sifn::cli
