// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <string_view>

namespace sifn::model {

/// The full model and its five ablations.
enum class Variant { kFull, kSa, kFn, kIn, kW2v, kSp };

inline constexpr std::array<Variant, 6> kAllVariants = {Variant::kFull, Variant::kSa, Variant::kFn,
                                                        Variant::kIn,   Variant::kW2v, Variant::kSp};

enum class Aggregation { kAttention, kMean };
enum class RatingHead { kInteractive, kFactorizationMachine };

/// Which sub-modules a variant keeps.
struct VariantSpec {
  Variant variant = Variant::kFull;
  Aggregation aggregation = Aggregation::kAttention;  // sa: unweighted mean over reviews
  bool fusion = true;                                  // fn: no fusion term
  RatingHead head = RatingHead::kInteractive;          // in: FM over the aggregates
  bool static_word_vectors = false;                    // w2v: pretrained static table
  bool sentiment_task = true;                          // sp: no sentiment head, lambda = 0
};

/// Short name: full, sa, fn, in, w2v, sp.
std::string_view to_string(Variant v);
/// Report name: SIFN, SIFN_sa, ...
std::string display_name(Variant v);
/// Accepts the short name or the report name. Throws ConfigError.
Variant variant_from_string(std::string_view name);

VariantSpec build_variant(Variant v);
VariantSpec build_variant(std::string_view name);

}  // namespace sifn::model
