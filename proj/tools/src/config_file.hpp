// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sifn::cli {

/// Flat `key = value` lines; `#` starts a comment. Keys may carry a
/// leading "--". Throws ConfigError naming the line on malformed input.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Splices the config file named by `--config` (if any) in front of the
/// subcommand's own flags, so that command-line flags take precedence.
std::vector<std::string> expand_config(std::span<const std::string> args);

}  // namespace sifn::cli
