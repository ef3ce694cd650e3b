// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "sifn/corpus/review.hpp"

namespace sifn::corpus {

/// Repeatedly drops users and items with fewer than `min_reviews`
/// interactions until nothing changes. Input order is preserved. Throws
/// DataError when nothing survives.
std::vector<ReviewRecord> kcore_filter(std::vector<ReviewRecord> records, std::size_t min_reviews);

}  // namespace sifn::corpus
