// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace sifn {

/// Worker cap: SIFN_NUM_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. Tasks must not share
/// mutable state. The first exception (by task index) is rethrown after
/// all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sifn
