// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/model/variant.hpp"

#include "sifn/common/errors.hpp"

namespace sifn::model {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kFull:
      return "full";
    case Variant::kSa:
      return "sa";
    case Variant::kFn:
      return "fn";
    case Variant::kIn:
      return "in";
    case Variant::kW2v:
      return "w2v";
    case Variant::kSp:
      return "sp";
  }
  return "unknown";
}

std::string display_name(Variant v) {
  return v == Variant::kFull ? std::string("SIFN") : "SIFN_" + std::string(to_string(v));
}

Variant variant_from_string(std::string_view name) {
  for (auto v : kAllVariants) {
    if (name == to_string(v) || name == display_name(v)) return v;
  }
  throw ConfigError("unknown variant '" + std::string(name) + "' (full, sa, fn, in, w2v, sp)");
}

VariantSpec build_variant(Variant v) {
  VariantSpec s;
  s.variant = v;
  switch (v) {
    case Variant::kFull:
      break;
    case Variant::kSa:
      s.aggregation = Aggregation::kMean;
      break;
    case Variant::kFn:
      s.fusion = false;
      break;
    case Variant::kIn:
      s.head = RatingHead::kFactorizationMachine;
      s.fusion = false;
      break;
    case Variant::kW2v:
      s.static_word_vectors = true;
      break;
    case Variant::kSp:
      s.sentiment_task = false;
      break;
  }
  return s;
}

VariantSpec build_variant(std::string_view name) { return build_variant(variant_from_string(name)); }

}  // namespace sifn::model
