// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sifn/autograd/ops.hpp"
#include "sifn/autograd/tensor.hpp"
#include "sifn/common/random.hpp"
#include "sifn/corpus/review.hpp"

// Batched building blocks of the network. Row-stacked shapes are used
// throughout: N reviews of l words become [N*l, k], B pairs with m review
// slots become [B*m, k]. Weight matrices keep their (out, in) orientation
// and are applied as x * W^T.

namespace sifn::model {

struct WordAttention {
  ag::Tensor review_vectors;  // s, [N, k]
  ag::Tensor weights;         // alpha, [N, l]
};

/// alpha_i = softmax_i(tanh(W_a e_i + b_a)) over unmasked words, s = sum_i alpha_i e_i.
/// words: [N*l, k]; word_mask: [N, l]; w_a: [1, k]; b_a: [1].
WordAttention sentiment_learner(const ag::Tensor& words, const ag::Mask& word_mask, const ag::Tensor& w_a,
                                const ag::Tensor& b_a, ag::EmptyRows empty_rows = ag::EmptyRows::kError);

/// W_s s + b_s. s: [N, k]; w_s: [C, k]; b_s: [C]. Returns [N, C].
ag::Tensor sentiment_logits(const ag::Tensor& s, const ag::Tensor& w_s, const ag::Tensor& b_s);

inline constexpr double kLogFloor = 1e-12;

/// Cross entropy of one side, averaged over the real reviews of each pair
/// and then over the B pairs. logits: [B*m, C]; labels: B*m entries;
/// review_mask: [B, m]. Masked slots are ignored; pairs with no real
/// review contribute 0.
ag::Tensor side_sentiment_loss(const ag::Tensor& logits, std::span<const corpus::SentimentLabel> labels,
                               const ag::Mask& review_mask);

/// Mean of the user-side and item-side losses.
ag::Tensor sentiment_loss(const ag::Tensor& user_loss, const ag::Tensor& item_loss);

/// Rows of an identity table. Out-of-range ids fall back to row 0 (the
/// cold-start row) when `unk_fallback`, else throw DomainError.
ag::Tensor id_embed(const ag::Tensor& table, std::span<const std::size_t> ids, bool unk_fallback = true);

/// W_o concat(s; e_id). s, e_id: [N, k]; w_o: [k, 2k].
ag::Tensor project_concat(const ag::Tensor& s, const ag::Tensor& e_id, const ag::Tensor& w_o);

struct ReviewAggregate {
  ag::Tensor aggregate;  // d, [B, k]
  ag::Tensor weights;    // beta, [B, m]
};

/// beta_j = softmax_j(tanh(W_ra o_j + b_ra)) over unmasked reviews, d = sum_j beta_j o_j.
/// o: [B*m, k]; review_mask: [B, m]; w_ra: [1, k]; b_ra: [1].
ReviewAggregate aggregate_reviews(const ag::Tensor& o, const ag::Mask& review_mask, const ag::Tensor& w_ra,
                                  const ag::Tensor& b_ra, ag::EmptyRows empty_rows = ag::EmptyRows::kError);

/// Unweighted mean over unmasked reviews; rows without reviews give d = 0.
ReviewAggregate mean_reviews(const ag::Tensor& o, const ag::Mask& review_mask);

/// f = d_U (.) (W_f d_I).
ag::Tensor fuse(const ag::Tensor& d_user, const ag::Tensor& d_item, const ag::Tensor& w_f);

/// p = (d_U + e_U) (.) (d_I + e_I) + W f + b. An undefined `f` drops the W f term.
ag::Tensor interact(const ag::Tensor& d_user, const ag::Tensor& e_user, const ag::Tensor& d_item,
                    const ag::Tensor& e_item, const ag::Tensor& f, const ag::Tensor& w, const ag::Tensor& b);

/// r = w_r p + b_U[user] + b_I[item]. p: [B, k]; w_r: [1, k]; bias tables: [n, 1]. Returns [B, 1].
ag::Tensor predict_rating(const ag::Tensor& p, const ag::Tensor& w_r, const ag::Tensor& user_bias,
                          const ag::Tensor& item_bias, std::span<const std::size_t> users,
                          std::span<const std::size_t> items);

/// Second-order factorization machine: w0 + <w, x> + sum_{i<j} <v_i, v_j> x_i x_j.
/// x: [B, n]; w0: [1]; w: [1, n]; v: [n, F]. Returns [B, 1].
ag::Tensor fm_predict(const ag::Tensor& x, const ag::Tensor& w0, const ag::Tensor& w, const ag::Tensor& v);

/// Inverted dropout: each entry is zeroed with probability `rate` and the
/// survivors scaled by 1/(1-rate). Entry i draws `stream.uniform(i)`.
ag::Tensor dropout(const ag::Tensor& x, double rate, const CounterStream& stream);

/// Mean squared error of predictions [B, 1] (or [B]) against targets.
ag::Tensor rating_loss(const ag::Tensor& predictions, std::span<const double> targets);

/// L_r + lambda * L_s.
ag::Tensor joint_loss(const ag::Tensor& rating, const ag::Tensor& sentiment, double lambda);

}  // namespace sifn::model
