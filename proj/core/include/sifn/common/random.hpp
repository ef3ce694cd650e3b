// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sifn {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Hashes an ordered list of integers into one 64-bit key.
std::uint64_t hash_key(std::initializer_list<std::uint64_t> parts);

/// Counter-based uniform stream: value i of the stream identified by `key`
/// is a pure function of (key, i), so consumers may draw in any order.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) : key_(key) {}

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

/// Gaussian sample with the given mean and standard deviation.
double normal(Rng& rng, double mean, double stddev);

}  // namespace sifn
