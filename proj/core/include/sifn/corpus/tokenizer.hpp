// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sifn::corpus {

/// Lowercases ASCII letters, splits on Unicode whitespace and strips ASCII
/// punctuation from both ends of every piece. Pieces that are pure
/// punctuation disappear.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace sifn::corpus
