// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sifn/autograd/tensor.hpp"

namespace sifn::ag {

/// Boolean keep-mask aligned with a tensor (true = participates).
struct Mask {
  Shape shape;
  std::vector<std::uint8_t> keep;

  static Mask all(Shape shape);
  static Mask from(Shape shape, std::vector<std::uint8_t> keep);
  std::size_t count() const;
};

enum class ElementwiseKind { kAdd, kSub, kMul, kTanh, kExp, kLog };

/// Dispatches to the unary or binary primitive named by `kind`. Binary kinds
/// accept equal shapes or a rank-1 `b` matching the last dimension of `a`.
Tensor elementwise(ElementwiseKind kind, const Tensor& a, const Tensor* b = nullptr);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor tanh(const Tensor& x);
Tensor exp(const Tensor& x);
/// Throws DomainError on any non-positive entry.
Tensor log(const Tensor& x);
/// max(x, floor); gradient flows only where x > floor.
Tensor clamp_min(const Tensor& x, double floor);
Tensor scale(const Tensor& x, double factor);

enum class Transpose { kNone, kB };

/// a[p x q] * b[q x r], or a[p x q] * b[r x q]^T with Transpose::kB.
Tensor matmul(const Tensor& a, const Tensor& b, Transpose transpose = Transpose::kNone);

/// What softmax_lastdim does with a row whose mask excludes every entry.
enum class EmptyRows { kError, kZero };

/// Softmax over the last dimension, excluding masked entries from the
/// normalizer. Masked outputs are exactly 0 and receive no gradient.
Tensor softmax_lastdim(const Tensor& x, const Mask* mask = nullptr,
                       EmptyRows empty_rows = EmptyRows::kError);

enum class ReduceKind { kSum, kMean, kWeightedSum };

/// Reduces `axis` away. For kWeightedSum, `weights` has shape x.shape[0..axis]
/// inclusive and is broadcast over the trailing dimensions.
Tensor reduce(ReduceKind kind, const Tensor& x, std::size_t axis, const Tensor* weights = nullptr);
Tensor sum(const Tensor& x, std::size_t axis);
Tensor mean(const Tensor& x, std::size_t axis);
Tensor weighted_sum(const Tensor& x, const Tensor& weights, std::size_t axis);
/// Sum of every element, as a scalar [1].
Tensor sum_all(const Tensor& x);
Tensor mean_all(const Tensor& x);

Tensor reshape(const Tensor& x, Shape shape);
/// Concatenation of two rank-2 tensors with equal row counts along columns.
Tensor concat_cols(const Tensor& a, const Tensor& b);
/// Rows `ids` of a rank-2 table. Row `frozen_row`, when given, never
/// receives gradient.
Tensor gather_rows(const Tensor& table, std::span<const std::size_t> ids,
                   std::optional<std::size_t> frozen_row = std::nullopt);

}  // namespace sifn::ag
