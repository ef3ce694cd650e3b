// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sifn {

// Little-endian binary encoding shared by profiles.bin, the contextual
// store and checkpoints. All multi-byte values are written LSB first.

class ByteWriter {
 public:
  void put_magic(std::string_view magic);
  void put_u8(std::uint8_t v);
  void put_u32(std::uint32_t v);
  void put_i64(std::int64_t v);
  void put_f32(float v);
  void put_f64(double v);
  void put_string(std::string_view s);
  void put_bytes(std::span<const std::byte> bytes);

  /// Appends the CRC32 of everything written so far.
  void put_trailing_crc();

  std::size_t size() const { return buffer_.size(); }
  std::span<const std::byte> bytes() const { return buffer_; }

 private:
  std::vector<std::byte> buffer_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  /// Throws DataError naming `what` when the magic does not match.
  void expect_magic(std::string_view magic, std::string_view what);
  std::uint8_t u8();
  std::uint32_t u32();
  std::int64_t i64();
  float f32();
  double f64();
  std::string string();
  std::span<const std::byte> bytes(std::size_t n);

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void seek(std::size_t offset);

 private:
  void need(std::size_t n) const;

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

/// Verifies and strips a trailing CRC32. Throws DataError on mismatch.
std::span<const std::byte> verify_trailing_crc(std::span<const std::byte> bytes,
                                               std::string_view what);

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace sifn
