// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/common/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "sifn/common/crc32.hpp"
#include "sifn/common/errors.hpp"

namespace sifn {

namespace {

template <typename U>
void put_le(std::vector<std::byte>& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
  }
}

template <typename U>
U get_le(std::span<const std::byte> in) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(std::to_integer<U>(in[i])) << (8 * i);
  }
  return v;
}

}  // namespace

void ByteWriter::put_magic(std::string_view magic) {
  put_bytes(std::as_bytes(std::span(magic.data(), magic.size())));
}

void ByteWriter::put_u8(std::uint8_t v) { buffer_.push_back(static_cast<std::byte>(v)); }
void ByteWriter::put_u32(std::uint32_t v) { put_le(buffer_, v); }
void ByteWriter::put_i64(std::int64_t v) { put_le(buffer_, static_cast<std::uint64_t>(v)); }
void ByteWriter::put_f32(float v) { put_le(buffer_, std::bit_cast<std::uint32_t>(v)); }
void ByteWriter::put_f64(double v) { put_le(buffer_, std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::put_string(std::string_view s) {
  put_u32(static_cast<std::uint32_t>(s.size()));
  put_magic(s);
}

void ByteWriter::put_bytes(std::span<const std::byte> bytes) {
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

void ByteWriter::put_trailing_crc() { put_u32(crc32(buffer_)); }

void ByteReader::need(std::size_t n) const {
  if (remaining() < n) {
    throw DataError("unexpected end of data at byte " + std::to_string(pos_) + " (need " +
                    std::to_string(n) + ", have " + std::to_string(remaining()) + ")");
  }
}

void ByteReader::expect_magic(std::string_view magic, std::string_view what) {
  need(magic.size());
  if (std::memcmp(bytes_.data() + pos_, magic.data(), magic.size()) != 0) {
    throw DataError(std::string(what) + ": bad magic, expected \"" + std::string(magic) + "\"");
  }
  pos_ += magic.size();
}

std::uint8_t ByteReader::u8() {
  need(1);
  return std::to_integer<std::uint8_t>(bytes_[pos_++]);
}

std::uint32_t ByteReader::u32() {
  need(4);
  auto v = get_le<std::uint32_t>(bytes_.subspan(pos_, 4));
  pos_ += 4;
  return v;
}

std::int64_t ByteReader::i64() {
  need(8);
  auto v = get_le<std::uint64_t>(bytes_.subspan(pos_, 8));
  pos_ += 8;
  return static_cast<std::int64_t>(v);
}

float ByteReader::f32() { return std::bit_cast<float>(u32()); }

double ByteReader::f64() {
  need(8);
  auto v = get_le<std::uint64_t>(bytes_.subspan(pos_, 8));
  pos_ += 8;
  return std::bit_cast<double>(v);
}

std::string ByteReader::string() {
  const auto n = u32();
  auto raw = bytes(n);
  return std::string(reinterpret_cast<const char*>(raw.data()), raw.size());
}

std::span<const std::byte> ByteReader::bytes(std::size_t n) {
  need(n);
  auto out = bytes_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void ByteReader::seek(std::size_t offset) {
  if (offset > bytes_.size()) {
    throw DataError("seek past end of data: " + std::to_string(offset));
  }
  pos_ = offset;
}

std::span<const std::byte> verify_trailing_crc(std::span<const std::byte> bytes,
                                               std::string_view what) {
  if (bytes.size() < 4) {
    throw DataError(std::string(what) + ": file too short for checksum");
  }
  auto body = bytes.first(bytes.size() - 4);
  const auto stored = get_le<std::uint32_t>(bytes.last(4));
  if (crc32(body) != stored) {
    throw DataError(std::string(what) + ": checksum mismatch (truncated or corrupted file)");
  }
  return body;
}

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open " + path.string());
  }
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  std::vector<std::byte> out(size);
  if (size > 0 && !in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(size))) {
    throw DataError("failed reading " + path.string());
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw DataError("cannot write " + tmp.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      throw DataError("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::as_bytes(std::span(text.data(), text.size())));
}

}  // namespace sifn
