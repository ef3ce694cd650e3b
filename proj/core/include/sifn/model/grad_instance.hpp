// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

#include "sifn/autograd/grad_check.hpp"
#include "sifn/corpus/dataset.hpp"
#include "sifn/model/sifn_model.hpp"

namespace sifn::model {

struct GradInstanceConfig {
  std::size_t k = 4;
  std::size_t m = 2;
  std::size_t l = 3;
  std::size_t batch = 2;
  Variant variant = Variant::kFull;
  double lambda = 1.0;
  std::uint64_t seed = 1;
  /// Larger than the training init so the nonlinearities are exercised.
  double init_stddev = 0.5;
};

/// A small random model with a trainable word table and one batch of
/// training pairs (so the own-review masking is exercised too).
struct GradInstance {
  std::unique_ptr<corpus::Dataset> dataset;  // inputs point into its profiles
  std::unique_ptr<SifnModel> model;
  ModelInputs inputs;
};

GradInstance make_grad_instance(const GradInstanceConfig& config);

/// Central-difference check of the joint loss (dropout off) against every
/// parameter of the instance.
ag::GradCheckReport check_model_gradients(const GradInstanceConfig& config, const ag::GradCheckOptions& options = {});

}  // namespace sifn::model
