// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/common/crc32.hpp"

#include <zlib.h>

#include <algorithm>
#include <limits>

namespace sifn {

std::uint32_t crc32(std::span<const std::byte> bytes, std::uint32_t seed) {
  uLong crc = seed;
  const auto* p = reinterpret_cast<const Bytef*>(bytes.data());
  std::size_t remaining = bytes.size();
  while (remaining > 0) {
    const auto chunk = static_cast<uInt>(
        std::min<std::size_t>(remaining, std::numeric_limits<uInt>::max()));
    crc = ::crc32(crc, p, chunk);
    p += chunk;
    remaining -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace sifn
