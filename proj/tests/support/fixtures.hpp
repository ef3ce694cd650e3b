// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "sifn/corpus/dataset.hpp"
#include "sifn/corpus/synth.hpp"

namespace sifn::testing {

/// Small planted-signal dataset with every split populated.
inline corpus::Dataset small_dataset(std::uint64_t seed = 3, std::size_t m = 3, std::size_t l = 10) {
  corpus::SynthConfig sc;
  sc.users = 12;
  sc.items = 8;
  sc.density = 0.7;
  sc.seed = seed;
  corpus::PreprocessConfig pc;
  pc.min_reviews = 1;
  pc.m = m;
  pc.l = l;
  pc.seed = seed;
  return corpus::preprocess(corpus::generate_synthetic(sc), pc);
}

}  // namespace sifn::testing
