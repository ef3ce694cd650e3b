// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/model/layers.hpp"

#include <string>

#include "sifn/common/errors.hpp"

namespace sifn::model {

using ag::Tensor;

WordAttention sentiment_learner(const Tensor& words, const ag::Mask& word_mask, const Tensor& w_a,
                                const Tensor& b_a, ag::EmptyRows empty_rows) {
  if (word_mask.shape.size() != 2) throw ShapeError("word mask must be [N, l]");
  const std::size_t n = word_mask.shape[0];
  const std::size_t l = word_mask.shape[1];
  if (words.rank() != 2 || words.dim(0) != n * l) {
    throw ShapeError("words " + ag::to_string(words.shape()) + " do not match mask " + ag::to_string(word_mask.shape));
  }
  const std::size_t k = words.dim(1);
  Tensor logits = ag::tanh(ag::add(ag::matmul(words, w_a, ag::Transpose::kB), b_a));
  Tensor alpha = ag::softmax_lastdim(ag::reshape(logits, {n, l}), &word_mask, empty_rows);
  Tensor s = ag::weighted_sum(ag::reshape(words, {n, l, k}), alpha, 1);
  return {s, alpha};
}

Tensor sentiment_logits(const Tensor& s, const Tensor& w_s, const Tensor& b_s) {
  return ag::add(ag::matmul(s, w_s, ag::Transpose::kB), b_s);
}

Tensor side_sentiment_loss(const Tensor& logits, std::span<const corpus::SentimentLabel> labels,
                           const ag::Mask& review_mask) {
  if (review_mask.shape.size() != 2) throw ShapeError("review mask must be [B, m]");
  const std::size_t b = review_mask.shape[0];
  const std::size_t m = review_mask.shape[1];
  const std::size_t c = logits.shape().back();
  if (logits.rank() != 2 || logits.dim(0) != b * m || labels.size() != b * m) {
    throw ShapeError("sentiment logits " + ag::to_string(logits.shape()) + " / labels do not match [B*m, C]");
  }
  // Per-entry weight of -log p: 1/(B * m_real) on the true class of real slots.
  std::vector<double> weights(b * m * c, 0.0);
  for (std::size_t i = 0; i < b; ++i) {
    std::size_t real = 0;
    for (std::size_t j = 0; j < m; ++j) real += review_mask.keep[i * m + j] ? 1 : 0;
    if (real == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (!review_mask.keep[i * m + j]) continue;
      const auto cls = static_cast<std::size_t>(labels[i * m + j]);
      if (cls >= c) throw DomainError("sentiment label out of range");
      weights[(i * m + j) * c + cls] = 1.0 / (static_cast<double>(b) * static_cast<double>(real));
    }
  }
  Tensor log_p = ag::log(ag::clamp_min(ag::softmax_lastdim(logits), kLogFloor));
  return ag::scale(ag::sum_all(ag::mul(log_p, Tensor::from({b * m, c}, std::move(weights)))), -1.0);
}

Tensor sentiment_loss(const Tensor& user_loss, const Tensor& item_loss) {
  return ag::scale(ag::add(user_loss, item_loss), 0.5);
}

Tensor id_embed(const Tensor& table, std::span<const std::size_t> ids, bool unk_fallback) {
  std::vector<std::size_t> rows(ids.begin(), ids.end());
  for (auto& r : rows) {
    if (r < table.dim(0)) continue;
    if (!unk_fallback) {
      throw DomainError("id " + std::to_string(r) + " outside table of " + std::to_string(table.dim(0)) + " rows");
    }
    r = 0;
  }
  return ag::gather_rows(table, rows);
}

Tensor project_concat(const Tensor& s, const Tensor& e_id, const Tensor& w_o) {
  return ag::matmul(ag::concat_cols(s, e_id), w_o, ag::Transpose::kB);
}

ReviewAggregate aggregate_reviews(const Tensor& o, const ag::Mask& review_mask, const Tensor& w_ra,
                                  const Tensor& b_ra, ag::EmptyRows empty_rows) {
  const std::size_t b = review_mask.shape.at(0);
  const std::size_t m = review_mask.shape.at(1);
  if (o.rank() != 2 || o.dim(0) != b * m) throw ShapeError("review vectors must be [B*m, k]");
  const std::size_t k = o.dim(1);
  Tensor logits = ag::tanh(ag::add(ag::matmul(o, w_ra, ag::Transpose::kB), b_ra));
  Tensor beta = ag::softmax_lastdim(ag::reshape(logits, {b, m}), &review_mask, empty_rows);
  return {ag::weighted_sum(ag::reshape(o, {b, m, k}), beta, 1), beta};
}

ReviewAggregate mean_reviews(const Tensor& o, const ag::Mask& review_mask) {
  const std::size_t b = review_mask.shape.at(0);
  const std::size_t m = review_mask.shape.at(1);
  if (o.rank() != 2 || o.dim(0) != b * m) throw ShapeError("review vectors must be [B*m, k]");
  std::vector<double> w(b * m, 0.0);
  for (std::size_t i = 0; i < b; ++i) {
    std::size_t real = 0;
    for (std::size_t j = 0; j < m; ++j) real += review_mask.keep[i * m + j] ? 1 : 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (review_mask.keep[i * m + j]) w[i * m + j] = 1.0 / static_cast<double>(real);
    }
  }
  Tensor beta = Tensor::from({b, m}, std::move(w));
  return {ag::weighted_sum(ag::reshape(o, {b, m, o.dim(1)}), beta, 1), beta};
}

Tensor fuse(const Tensor& d_user, const Tensor& d_item, const Tensor& w_f) {
  return ag::mul(d_user, ag::matmul(d_item, w_f, ag::Transpose::kB));
}

Tensor interact(const Tensor& d_user, const Tensor& e_user, const Tensor& d_item, const Tensor& e_item,
                const Tensor& f, const Tensor& w, const Tensor& b) {
  Tensor p = ag::mul(ag::add(d_user, e_user), ag::add(d_item, e_item));
  if (f.defined()) p = ag::add(p, ag::matmul(f, w, ag::Transpose::kB));
  return ag::add(p, b);
}

Tensor predict_rating(const Tensor& p, const Tensor& w_r, const Tensor& user_bias, const Tensor& item_bias,
                      std::span<const std::size_t> users, std::span<const std::size_t> items) {
  Tensor r = ag::matmul(p, w_r, ag::Transpose::kB);
  r = ag::add(r, id_embed(user_bias, users));
  return ag::add(r, id_embed(item_bias, items));
}

Tensor fm_predict(const Tensor& x, const Tensor& w0, const Tensor& w, const Tensor& v) {
  // sum_{i<j} <v_i,v_j> x_i x_j = 1/2 sum_f [(x V)_f^2 - (x^2 V^2)_f]
  Tensor xv = ag::matmul(x, v);
  Tensor pairwise = ag::sub(ag::mul(xv, xv), ag::matmul(ag::mul(x, x), ag::mul(v, v)));
  const std::size_t b = x.dim(0);
  Tensor second = ag::reshape(ag::scale(ag::sum(pairwise, 1), 0.5), {b, 1});
  Tensor linear = ag::add(ag::matmul(x, w, ag::Transpose::kB), w0);
  return ag::add(linear, second);
}

Tensor dropout(const Tensor& x, double rate, const CounterStream& stream) {
  if (rate <= 0.0) return x;
  if (rate >= 1.0) throw ConfigError("dropout rate must be below 1");
  std::vector<double> keep(x.numel());
  const double scale = 1.0 / (1.0 - rate);
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = stream.uniform(i) < rate ? 0.0 : scale;
  return ag::mul(x, Tensor::from(x.shape(), std::move(keep)));
}

Tensor rating_loss(const Tensor& predictions, std::span<const double> targets) {
  if (targets.empty()) throw DataError("rating loss of an empty batch");
  if (predictions.numel() != targets.size()) {
    throw ShapeError("predictions " + ag::to_string(predictions.shape()) + " vs " + std::to_string(targets.size()) +
                     " targets");
  }
  Tensor t = Tensor::from(predictions.shape(), std::vector<double>(targets.begin(), targets.end()));
  Tensor diff = ag::sub(predictions, t);
  return ag::mean_all(ag::mul(diff, diff));
}

Tensor joint_loss(const Tensor& rating, const Tensor& sentiment, double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  return ag::add(rating, ag::scale(sentiment, lambda));
}

}  // namespace sifn::model
