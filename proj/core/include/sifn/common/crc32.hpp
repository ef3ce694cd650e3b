// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace sifn {

/// IEEE 802.3 CRC32 (the zlib polynomial). Pass a previous value as `seed`
/// to continue a running checksum.
std::uint32_t crc32(std::span<const std::byte> bytes, std::uint32_t seed = 0);

}  // namespace sifn
