// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/tokenizer.hpp"

#include <cctype>
#include <cstdint>

namespace sifn::corpus {

namespace {

bool is_unicode_space(char32_t c) {
  switch (c) {
    case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

// Decodes the code point at `pos`; malformed bytes decode as themselves.
char32_t decode(std::string_view s, std::size_t pos, std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) {
    return pos + i < s.size() && (static_cast<unsigned char>(s[pos + i]) & 0xC0) == 0x80;
  };
  auto byte = [&](std::size_t i) { return static_cast<char32_t>(static_cast<unsigned char>(s[pos + i]) & 0x3F); };
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    len = 2;
    return (static_cast<char32_t>(b0 & 0x1F) << 6) | byte(1);
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    len = 3;
    return (static_cast<char32_t>(b0 & 0x0F) << 12) | (byte(1) << 6) | byte(2);
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    len = 4;
    return (static_cast<char32_t>(b0 & 0x07) << 18) | (byte(1) << 12) | (byte(2) << 6) | byte(3);
  }
  len = 1;
  return b0;
}

void flush(std::string& piece, std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = piece.size();
  while (begin < end && std::ispunct(static_cast<unsigned char>(piece[begin]))) ++begin;
  while (end > begin && std::ispunct(static_cast<unsigned char>(piece[end - 1]))) --end;
  if (begin < end) out.emplace_back(piece.substr(begin, end - begin));
  piece.clear();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string piece;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 1;
    const char32_t c = decode(text, pos, len);
    if (is_unicode_space(c)) {
      flush(piece, out);
    } else if (len == 1) {
      piece.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos]))));
    } else {
      piece.append(text.substr(pos, len));
    }
    pos += len;
  }
  flush(piece, out);
  return out;
}

}  // namespace sifn::corpus
