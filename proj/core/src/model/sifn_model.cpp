// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/model/sifn_model.hpp"

#include <string>

#include "sifn/common/errors.hpp"
#include "sifn/common/random.hpp"
#include "sifn/model/layers.hpp"

namespace sifn::model {

using ag::Tensor;

namespace {

constexpr std::size_t kClasses = corpus::kNumSentimentClasses;

// Dropout sites; part of the stream key.
enum : std::uint64_t { kSiteUserReviews = 0, kSiteItemReviews = 1, kSiteUserAggregate = 2, kSiteItemAggregate = 3 };

SideInputs gather_side(const corpus::ProfileSet& set, std::span<const std::size_t> ids,
                       std::span<const std::optional<std::size_t>> excluded) {
  const std::size_t b = ids.size();
  const std::size_t m = set.m();
  const std::size_t l = set.l();
  SideInputs in;
  in.ids.assign(ids.begin(), ids.end());
  in.slots.reserve(b * m);
  std::vector<std::uint8_t> words(b * m * l, 0);
  std::vector<std::uint8_t> reviews(b * m, 0);
  in.labels.assign(b * m, corpus::SentimentLabel::kNeutral);
  for (std::size_t i = 0; i < b; ++i) {
    const auto& profile = set[ids[i] < set.size() ? ids[i] : corpus::ProfileSet::kColdStart];
    for (std::size_t j = 0; j < m; ++j) {
      const auto& slot = profile.slots.at(j);
      const bool real = slot.real && excluded[i] != j;
      in.slots.push_back({&slot.review, {profile.owner_id, j}, real});
      if (!real) continue;
      reviews[i * m + j] = 1;
      in.labels[i * m + j] = slot.label;
      for (std::size_t t = 0; t < l; ++t) words[(i * m + j) * l + t] = slot.review.mask[t];
    }
  }
  in.word_mask = ag::Mask::from({b * m, l}, std::move(words));
  in.review_mask = ag::Mask::from({b, m}, std::move(reviews));
  return in;
}

Tensor init_normal(ag::Shape shape, Rng& rng, double sd) {
  std::vector<double> v(ag::numel(shape));
  for (auto& x : v) x = normal(rng, 0.0, sd);
  return Tensor::from(std::move(shape), std::move(v));
}

}  // namespace

ModelInputs make_inputs(const corpus::Batch& batch, const corpus::Dataset& dataset) {
  if (batch.size() == 0) throw DataError("empty batch");
  ModelInputs in;
  in.batch_size = batch.size();
  in.user = gather_side(dataset.profiles.users, batch.users, batch.user_excluded_slot);
  in.item = gather_side(dataset.profiles.items, batch.items, batch.item_excluded_slot);
  in.ratings = batch.ratings;
  return in;
}

SifnModel::SifnModel(ModelConfig config, std::shared_ptr<embeddings::EmbeddingStore> store)
    : config_(config), spec_(build_variant(config.variant)), store_(std::move(store)) {
  if (!store_) throw ConfigError("model needs an embedding store");
  if (config_.k == 0 || config_.m == 0 || config_.l == 0) throw ConfigError("k, m and l must be positive");
  if (config_.num_users == 0 || config_.num_items == 0) throw ConfigError("ID tables need at least the cold-start row");
  if (!(config_.dropout >= 0.0 && config_.dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  set_lambda(config_.lambda);
  if (spec_.static_word_vectors && store_->backend() != embeddings::Backend::kStaticTable) {
    throw ConfigError("variant " + display_name(config_.variant) + " needs a static word-vector table");
  }

  const std::size_t k = config_.k;
  const double sd = config_.init_stddev;
  Rng rng(hash_key({config_.seed, 0x1417}));
  auto weight = [&](const std::string& name, ag::Shape shape) { params_.add(name, init_normal(shape, rng, sd)); };
  auto bias = [&](const std::string& name, ag::Shape shape) { params_.add(name, Tensor::zeros(shape)); };

  for (const auto& p : store_->parameters()) params_.add(p.name, p.tensor, corpus::kPadId);
  if (store_->dim() != k) weight("W_proj", {k, store_->dim()});

  for (const char* side : {"user.", "item."}) {
    const std::string s(side);
    weight(s + "W_a", {1, k});
    bias(s + "b_a", {1});
    weight(s + "W_o", {k, 2 * k});
    if (spec_.aggregation == Aggregation::kAttention) {
      weight(s + "W_ra", {1, k});
      bias(s + "b_ra", {1});
    }
  }
  weight("W_id_user", {config_.num_users, k});
  weight("W_id_item", {config_.num_items, k});
  if (spec_.head == RatingHead::kInteractive) {
    if (spec_.fusion) {
      weight("W_f", {k, k});
      weight("W", {k, k});
    }
    bias("b", {k});
    weight("w_r", {1, k});
    bias("b_user", {config_.num_users, 1});
    bias("b_item", {config_.num_items, 1});
  } else {
    bias("fm.w0", {1});
    weight("fm.w", {1, 4 * k});
    weight("fm.V", {4 * k, k});
  }
  if (spec_.sentiment_task) {
    weight("W_s", {kClasses, k});
    bias("b_s", {kClasses});
  }
}

void SifnModel::set_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  config_.lambda = lambda;
}

double SifnModel::effective_lambda() const { return spec_.sentiment_task ? config_.lambda : 0.0; }

SideTrace SifnModel::run_side(const char* side, const SideInputs& in, const Tensor& id_table,
                              const ForwardOptions& options, std::uint64_t site) const {
  const std::string s(side);
  const std::size_t b = in.ids.size();
  const std::size_t m = config_.m;
  const std::size_t l = config_.l;
  if (in.slots.size() != b * m || in.word_mask.shape != ag::Shape{b * m, l}) {
    throw ShapeError("side inputs do not match m=" + std::to_string(m) + ", l=" + std::to_string(l));
  }
  auto stream = [&](std::uint64_t site_id) {
    return CounterStream(hash_key({config_.seed, options.epoch, options.batch, site_id}));
  };
  const double rate = options.training ? config_.dropout : 0.0;

  SideTrace t;
  Tensor words = store_->encode(in.slots, l);
  if (params_.contains("W_proj")) words = ag::matmul(words, params_.get("W_proj"), ag::Transpose::kB);
  auto attention = sentiment_learner(words, in.word_mask, params_.get(s + "W_a"), params_.get(s + "b_a"),
                                     ag::EmptyRows::kZero);
  t.word_attention = attention.weights;
  t.review_vectors = attention.review_vectors;
  Tensor reviews = dropout(t.review_vectors, rate, stream(site));
  if (spec_.sentiment_task) {
    t.sentiment_logits = sentiment_logits(reviews, params_.get("W_s"), params_.get("b_s"));
  }

  t.id_embedding = id_embed(id_table, in.ids);
  std::vector<std::size_t> repeated;
  repeated.reserve(b * m);
  for (auto id : in.ids) repeated.insert(repeated.end(), m, id);
  Tensor o = project_concat(reviews, id_embed(id_table, repeated), params_.get(s + "W_o"));
  auto agg = spec_.aggregation == Aggregation::kAttention
                 ? aggregate_reviews(o, in.review_mask, params_.get(s + "W_ra"), params_.get(s + "b_ra"),
                                     ag::EmptyRows::kZero)
                 : mean_reviews(o, in.review_mask);
  t.review_attention = agg.weights;
  t.aggregate = dropout(agg.aggregate, rate, stream(site + 2));
  return t;
}

ForwardResult SifnModel::forward(const ModelInputs& inputs, const ForwardOptions& options) const {
  if (inputs.batch_size == 0 || inputs.ratings.size() != inputs.batch_size) throw DataError("malformed batch");
  ForwardResult r;
  auto& tr = r.trace;
  tr.user = run_side("user.", inputs.user, params_.get("W_id_user"), options, kSiteUserReviews);
  tr.item = run_side("item.", inputs.item, params_.get("W_id_item"), options, kSiteItemReviews);
  static_assert(kSiteUserReviews + 2 == kSiteUserAggregate && kSiteItemReviews + 2 == kSiteItemAggregate);

  if (spec_.head == RatingHead::kInteractive) {
    if (spec_.fusion) tr.fusion = fuse(tr.user.aggregate, tr.item.aggregate, params_.get("W_f"));
    tr.preference = interact(tr.user.aggregate, tr.user.id_embedding, tr.item.aggregate, tr.item.id_embedding,
                             tr.fusion, spec_.fusion ? params_.get("W") : Tensor(), params_.get("b"));
    tr.prediction = predict_rating(tr.preference, params_.get("w_r"), params_.get("b_user"), params_.get("b_item"),
                                   inputs.user.ids, inputs.item.ids);
  } else {
    Tensor x = ag::concat_cols(ag::concat_cols(tr.user.aggregate, tr.user.id_embedding),
                               ag::concat_cols(tr.item.aggregate, tr.item.id_embedding));
    tr.prediction = fm_predict(x, params_.get("fm.w0"), params_.get("fm.w"), params_.get("fm.V"));
  }

  r.losses.rating = rating_loss(tr.prediction, inputs.ratings);
  if (spec_.sentiment_task) {
    r.losses.sentiment =
        sentiment_loss(side_sentiment_loss(tr.user.sentiment_logits, inputs.user.labels, inputs.user.review_mask),
                       side_sentiment_loss(tr.item.sentiment_logits, inputs.item.labels, inputs.item.review_mask));
    r.losses.total = joint_loss(r.losses.rating, r.losses.sentiment, config_.lambda);
  } else {
    r.losses.sentiment = Tensor::scalar(0.0);
    r.losses.total = r.losses.rating;
  }
  return r;
}

std::vector<double> SifnModel::predict(const ModelInputs& inputs) const {
  auto result = forward(inputs);
  const auto d = result.trace.prediction.data();
  return {d.begin(), d.end()};
}

std::vector<double> SifnModel::classify_reviews(std::span<const corpus::TokenizedReview> reviews) const {
  if (!spec_.sentiment_task) throw ConfigError(display_name(config_.variant) + " has no sentiment head");
  if (store_->backend() == embeddings::Backend::kContextualStore) {
    throw ConfigError("free-standing reviews cannot be encoded by the contextual store");
  }
  const std::size_t n = reviews.size();
  const std::size_t l = config_.l;
  if (n == 0) return {};
  std::vector<embeddings::SlotRef> slots;
  std::vector<std::uint8_t> mask;
  for (const auto& r : reviews) {
    if (r.token_ids.size() != l) throw ShapeError("review length does not match l");
    slots.push_back({&r, {}, r.true_length > 0});
    mask.insert(mask.end(), r.mask.begin(), r.mask.end());
  }
  const auto word_mask = ag::Mask::from({n, l}, std::move(mask));
  Tensor words = store_->encode(slots, l);
  if (params_.contains("W_proj")) words = ag::matmul(words, params_.get("W_proj"), ag::Transpose::kB);
  std::vector<double> probs(n * kClasses, 0.0);
  for (const char* side : {"user.", "item."}) {
    const std::string s(side);
    auto att = sentiment_learner(words, word_mask, params_.get(s + "W_a"), params_.get(s + "b_a"),
                                 ag::EmptyRows::kZero);
    auto p = ag::softmax_lastdim(sentiment_logits(att.review_vectors, params_.get("W_s"), params_.get("b_s")));
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] += 0.5 * p[i];
  }
  return probs;
}

std::vector<double> predict_pairs(const SifnModel& model, const corpus::Dataset& dataset,
                                  std::span<const corpus::Pair> pairs, std::size_t batch_size) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& batch : corpus::make_batches(pairs, batch_size)) {
    const auto preds = model.predict(make_inputs(batch, dataset));
    out.insert(out.end(), preds.begin(), preds.end());
  }
  return out;
}

std::size_t SifnModel::expected_parameter_count(const ModelConfig& config, std::size_t store_dim,
                                                std::optional<std::size_t> trainable_vocab) {
  const auto spec = build_variant(config.variant);
  const std::size_t k = config.k;
  std::size_t n = 0;
  if (trainable_vocab) n += *trainable_vocab * store_dim;
  if (store_dim != k) n += k * store_dim;
  const std::size_t per_side = (k + 1) + 2 * k * k + (spec.aggregation == Aggregation::kAttention ? k + 1 : 0);
  n += 2 * per_side;
  n += (config.num_users + config.num_items) * k;
  if (spec.head == RatingHead::kInteractive) {
    if (spec.fusion) n += 2 * k * k;
    n += k + k + config.num_users + config.num_items;
  } else {
    n += 1 + 4 * k + 4 * k * k;
  }
  if (spec.sentiment_task) n += kClasses * k + kClasses;
  return n;
}

}  // namespace sifn::model
