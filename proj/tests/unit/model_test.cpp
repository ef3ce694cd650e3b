// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "sifn/autograd/ops.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/embeddings/store.hpp"
#include "sifn/model/grad_instance.hpp"
#include "sifn/model/sifn_model.hpp"

namespace sifn::model {
namespace {

using ag::Tensor;
using Vec = std::vector<double>;

Vec values(const Tensor& t) { return {t.data().begin(), t.data().end()}; }

GradInstance instance(Variant v = Variant::kFull, std::uint64_t seed = 1, std::size_t m = 2, std::size_t batch = 2) {
  GradInstanceConfig c;
  c.variant = v;
  c.seed = seed;
  c.m = m;
  c.batch = batch;
  return make_grad_instance(c);
}

void expect_rows_normalized(const Tensor& weights, const ag::Mask& mask) {
  const std::size_t cols = weights.shape().back();
  for (std::size_t r = 0; r < weights.numel() / cols; ++r) {
    double sum = 0.0;
    bool any = false;
    for (std::size_t c = 0; c < cols; ++c) {
      const double w = weights[r * cols + c];
      EXPECT_GE(w, 0.0);
      if (mask.keep[r * cols + c]) {
        sum += w;
        any = true;
      } else {
        EXPECT_EQ(w, 0.0);
      }
    }
    if (any) EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Variant, NamesRoundTrip) {
  for (auto v : kAllVariants) {
    EXPECT_EQ(variant_from_string(to_string(v)), v);
    EXPECT_EQ(variant_from_string(display_name(v)), v);
  }
  EXPECT_EQ(display_name(Variant::kSp), "SIFN_sp");
  EXPECT_EQ(display_name(Variant::kFull), "SIFN");
  EXPECT_THROW(variant_from_string("SIFN_xx"), ConfigError);
}

TEST(Variant, SpecsRemoveOneModuleEach) {
  EXPECT_EQ(build_variant(Variant::kSa).aggregation, Aggregation::kMean);
  EXPECT_FALSE(build_variant(Variant::kFn).fusion);
  EXPECT_EQ(build_variant(Variant::kIn).head, RatingHead::kFactorizationMachine);
  EXPECT_TRUE(build_variant(Variant::kW2v).static_word_vectors);
  EXPECT_FALSE(build_variant(Variant::kSp).sentiment_task);
  const auto full = build_variant(Variant::kFull);
  EXPECT_EQ(full.aggregation, Aggregation::kAttention);
  EXPECT_TRUE(full.fusion && full.sentiment_task && !full.static_word_vectors);
}

// Scalar count from the shape inventory, written independently of the model.
std::size_t inventory_count(Variant v, std::size_t k, std::size_t nu, std::size_t ni, std::size_t vocab) {
  std::size_t n = vocab * k;
  if (v == Variant::kW2v) n = 0;
  for (int side = 0; side < 2; ++side) {
    n += k + 1;      // W_a, b_a
    n += k * 2 * k;  // W_o
    if (v != Variant::kSa) n += k + 1;
  }
  n += nu * k + ni * k;
  if (v == Variant::kIn) {
    n += 1 + 4 * k + 4 * k * k;
  } else {
    if (v != Variant::kFn) n += 2 * k * k;
    n += k + k + nu + ni;
  }
  if (v != Variant::kSp) n += 3 * k + 3;
  return n;
}

TEST(Model, ParameterCountMatchesShapeInventory) {
  for (auto v : kAllVariants) {
    auto g = instance(v);
    const auto& c = g.model->config();
    const std::size_t vocab = g.dataset->vocab.size();
    const auto expected = inventory_count(v, c.k, c.num_users, c.num_items, vocab);
    EXPECT_EQ(g.model->params().scalar_count(), expected) << display_name(v);
    std::optional<std::size_t> trainable;
    if (v != Variant::kW2v) trainable = vocab;
    EXPECT_EQ(SifnModel::expected_parameter_count(c, c.k, trainable), expected) << display_name(v);
  }
}

TEST(Model, SpHasNoSentimentHead) {
  auto g = instance(Variant::kSp);
  EXPECT_FALSE(g.model->params().contains("W_s"));
  EXPECT_FALSE(g.model->params().contains("b_s"));
  auto r = g.model->forward(g.inputs);
  EXPECT_EQ(r.losses.sentiment.item(), 0.0);
  EXPECT_EQ(r.losses.total.item(), r.losses.rating.item());
  EXPECT_EQ(g.model->effective_lambda(), 0.0);
  EXPECT_FALSE(r.trace.user.sentiment_logits.defined());
}

TEST(Model, TraceShapes) {
  auto g = instance(Variant::kFull, 2, 2, 3);
  auto r = g.model->forward(g.inputs);
  const std::size_t b = 3, m = 2, l = 3, k = 4;
  for (const auto* side : {&r.trace.user, &r.trace.item}) {
    EXPECT_EQ(side->word_attention.shape(), (ag::Shape{b * m, l}));
    EXPECT_EQ(side->review_vectors.shape(), (ag::Shape{b * m, k}));
    EXPECT_EQ(side->sentiment_logits.shape(), (ag::Shape{b * m, 3}));
    EXPECT_EQ(side->review_attention.shape(), (ag::Shape{b, m}));
    EXPECT_EQ(side->aggregate.shape(), (ag::Shape{b, k}));
    EXPECT_EQ(side->id_embedding.shape(), (ag::Shape{b, k}));
  }
  EXPECT_EQ(r.trace.fusion.shape(), (ag::Shape{b, k}));
  EXPECT_EQ(r.trace.preference.shape(), (ag::Shape{b, k}));
  EXPECT_EQ(r.trace.prediction.shape(), (ag::Shape{b, 1}));
}

TEST(Model, AttentionRowsAreNormalized) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = instance(Variant::kFull, seed, 3, 4);
    auto r = g.model->forward(g.inputs);
    expect_rows_normalized(r.trace.user.word_attention, g.inputs.user.word_mask);
    expect_rows_normalized(r.trace.item.word_attention, g.inputs.item.word_mask);
    expect_rows_normalized(r.trace.user.review_attention, g.inputs.user.review_mask);
    expect_rows_normalized(r.trace.item.review_attention, g.inputs.item.review_mask);
  }
}

// Reverses the m review slots of every pair on one side.
SideInputs reverse_slots(const SideInputs& in, std::size_t m, std::size_t l) {
  SideInputs out = in;
  const std::size_t b = in.ids.size();
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t from = i * m + (m - 1 - j);
      const std::size_t to = i * m + j;
      out.slots[to] = in.slots[from];
      out.labels[to] = in.labels[from];
      out.review_mask.keep[to] = in.review_mask.keep[from];
      for (std::size_t t = 0; t < l; ++t) out.word_mask.keep[to * l + t] = in.word_mask.keep[from * l + t];
    }
  }
  return out;
}

TEST(Model, PermutingReviewSlotsChangesNothing) {
  for (auto v : {Variant::kFull, Variant::kSa, Variant::kIn}) {
    auto g = instance(v, 3, 3, 3);
    auto permuted = g.inputs;
    permuted.user = reverse_slots(g.inputs.user, 3, 3);
    permuted.item = reverse_slots(g.inputs.item, 3, 3);
    auto a = g.model->forward(g.inputs);
    auto b = g.model->forward(permuted);
    auto near = [](const Tensor& x, const Tensor& y) {
      for (std::size_t i = 0; i < x.numel(); ++i) EXPECT_NEAR(x[i], y[i], 1e-12);
    };
    near(a.trace.user.aggregate, b.trace.user.aggregate);
    near(a.trace.item.aggregate, b.trace.item.aggregate);
    near(a.trace.prediction, b.trace.prediction);
    near(a.losses.rating, b.losses.rating);
    near(a.losses.sentiment, b.losses.sentiment);
  }
}

TEST(Model, ZeroLambdaLeavesSentimentHeadWithoutGradient) {
  GradInstanceConfig c;
  c.lambda = 0.0;
  auto g = make_grad_instance(c);
  g.model->forward(g.inputs).losses.total.backward();
  for (const char* name : {"W_s", "b_s"}) {
    const auto& t = g.model->params().get(name);
    for (double x : t.grad()) EXPECT_EQ(x, 0.0) << name;
  }
  g.model->params().zero_grad();
  g.model->set_lambda(1.0);
  g.model->forward(g.inputs).losses.total.backward();
  double norm = 0.0;
  for (double x : g.model->params().get("W_s").grad()) norm += x * x;
  EXPECT_GT(norm, 0.0);
}

TEST(Model, ZeroWordAttentionWeightsGiveUniformAttention) {
  auto g = instance();
  for (const char* name : {"user.W_a", "item.W_a", "user.b_a", "item.b_a"}) {
    for (auto& x : g.model->params().get(name).mutable_data()) x = 0.0;
  }
  auto r = g.model->forward(g.inputs);
  const auto& mask = g.inputs.user.word_mask;
  const std::size_t l = 3;
  for (std::size_t row = 0; row < mask.shape[0]; ++row) {
    std::size_t real = 0;
    for (std::size_t t = 0; t < l; ++t) real += mask.keep[row * l + t];
    for (std::size_t t = 0; t < l; ++t) {
      const double expected = mask.keep[row * l + t] ? 1.0 / static_cast<double>(real) : 0.0;
      EXPECT_NEAR(r.trace.user.word_attention[row * l + t], expected, 1e-12);
    }
  }
}

TEST(Model, FnEqualsFullWithZeroInteractionWeight) {
  auto full = instance(Variant::kFull, 4);
  auto fn = instance(Variant::kFn, 4);
  for (auto& p : fn.model->params().entries()) {
    auto src = full.model->params().get(p.name).data();
    std::copy(src.begin(), src.end(), p.tensor.mutable_data().begin());
  }
  for (auto& x : full.model->params().get("W").mutable_data()) x = 0.0;
  auto a = full.model->forward(full.inputs);
  auto b = fn.model->forward(fn.inputs);
  EXPECT_EQ(values(a.trace.preference), values(b.trace.preference));
  EXPECT_EQ(values(a.trace.prediction), values(b.trace.prediction));
}

TEST(Model, MeanAggregationMatchesAttentionOnSingleReview) {
  // m = 1: every profile holds at most one real review, so attention collapses to weight 1.
  auto full = instance(Variant::kFull, 5, 1, 2);
  auto sa = instance(Variant::kSa, 5, 1, 2);
  for (auto& p : sa.model->params().entries()) {
    auto src = full.model->params().get(p.name).data();
    std::copy(src.begin(), src.end(), p.tensor.mutable_data().begin());
  }
  auto a = full.model->forward(full.inputs);
  auto b = sa.model->forward(sa.inputs);
  EXPECT_EQ(values(a.trace.prediction), values(b.trace.prediction));
}

TEST(Model, FmHeadOnZeroFeaturesGivesGlobalBias) {
  auto g = instance(Variant::kIn);
  for (auto& p : g.model->params().entries()) {
    if (p.name == "fm.w0") {
      p.tensor.mutable_data()[0] = 3.25;
    } else if (p.name.starts_with("user.W_o") || p.name.starts_with("item.W_o") || p.name.starts_with("W_id")) {
      for (auto& x : p.tensor.mutable_data()) x = 0.0;
    }
  }
  for (double y : g.model->predict(g.inputs)) EXPECT_EQ(y, 3.25);
}

TEST(Model, ForwardIsDeterministic) {
  auto a = instance(Variant::kFull, 6);
  auto b = instance(Variant::kFull, 6);
  ForwardOptions train{true, 3, 7};
  auto ra = a.model->forward(a.inputs, train);
  auto rb = b.model->forward(b.inputs, train);
  EXPECT_EQ(ra.losses.total.item(), rb.losses.total.item());
  EXPECT_EQ(values(ra.trace.prediction), values(rb.trace.prediction));
}

TEST(Model, DropoutOnlyWhileTraining) {
  GradInstanceConfig c;
  auto g = make_grad_instance(c);
  ModelConfig mc = g.model->config();
  mc.dropout = 0.5;
  SifnModel model(mc, g.model->store_handle());
  model.params().assign_values(g.model->params());
  auto eval_a = model.forward(g.inputs);
  auto eval_b = model.forward(g.inputs, {false, 9, 9});
  EXPECT_EQ(eval_a.losses.total.item(), eval_b.losses.total.item());
  auto train_a = model.forward(g.inputs, {true, 1, 0});
  auto train_b = model.forward(g.inputs, {true, 1, 1});
  EXPECT_NE(train_a.losses.total.item(), eval_a.losses.total.item());
  EXPECT_NE(train_a.losses.total.item(), train_b.losses.total.item());
}

TEST(Model, InitializationFollowsTheConfig) {
  auto ds = testing::small_dataset();
  auto store = embeddings::init_trainable_table(ds.vocab, 8, 1);
  ModelConfig c;
  c.k = 8;
  c.m = ds.m();
  c.l = ds.l();
  c.num_users = ds.profiles.users.size();
  c.num_items = ds.profiles.items.size();
  SifnModel a(c, store);
  SifnModel b(c, store);
  EXPECT_EQ(values(a.params().get("W_f")), values(b.params().get("W_f")));
  for (double x : a.params().get("b_user").data()) EXPECT_EQ(x, 0.0);
  for (double x : a.params().get("b_s").data()) EXPECT_EQ(x, 0.0);
  double sq = 0.0;
  const auto w = a.params().get("user.W_o").data();
  for (double x : w) sq += x * x;
  EXPECT_NEAR(std::sqrt(sq / static_cast<double>(w.size())), 0.01, 0.004);
  c.seed = 43;
  SifnModel other(c, store);
  EXPECT_NE(values(a.params().get("W_f")), values(other.params().get("W_f")));
}

TEST(Model, ProjectionForNarrowOrWideStores) {
  auto ds = testing::small_dataset();
  ModelConfig c;
  c.k = 4;
  c.m = ds.m();
  c.l = ds.l();
  c.num_users = ds.profiles.users.size();
  c.num_items = ds.profiles.items.size();
  SifnModel model(c, embeddings::init_trainable_table(ds.vocab, 6, 1));
  ASSERT_TRUE(model.params().contains("W_proj"));
  EXPECT_EQ(model.params().get("W_proj").shape(), (ag::Shape{4, 6}));
  EXPECT_EQ(model.params().scalar_count(), SifnModel::expected_parameter_count(c, 6, ds.vocab.size()));
}

TEST(Model, InvalidConfigurations) {
  auto ds = testing::small_dataset();
  auto store = embeddings::init_trainable_table(ds.vocab, 4, 1);
  ModelConfig c;
  c.k = 4;
  c.variant = Variant::kW2v;
  EXPECT_THROW(SifnModel(c, store), ConfigError);
  c.variant = Variant::kFull;
  c.lambda = -1;
  EXPECT_THROW(SifnModel(c, store), ConfigError);
  c.lambda = 1;
  c.dropout = 1.0;
  EXPECT_THROW(SifnModel(c, store), ConfigError);
  c.dropout = 0.2;
  EXPECT_THROW(SifnModel(c, nullptr), ConfigError);
}

TEST(Model, ClassifyReviewsReturnsDistributions) {
  auto g = instance();
  std::vector<corpus::TokenizedReview> reviews;
  for (const auto& s : g.dataset->profiles.users[1].slots) reviews.push_back(s.review);
  auto probs = g.model->classify_reviews(reviews);
  ASSERT_EQ(probs.size(), reviews.size() * 3);
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    EXPECT_NEAR(probs[3 * i] + probs[3 * i + 1] + probs[3 * i + 2], 1.0, 1e-12);
  }
  auto sp = instance(Variant::kSp);
  EXPECT_THROW(sp.model->classify_reviews(reviews), ConfigError);
}

TEST(Model, PredictPairsMatchesBatchedForward) {
  auto g = instance(Variant::kFull, 2, 2, 3);
  auto pairs = g.dataset->pairs_in(corpus::SplitTag::kTrain);
  auto all = predict_pairs(*g.model, *g.dataset, pairs, 256);
  auto small = predict_pairs(*g.model, *g.dataset, pairs, 2);
  ASSERT_EQ(all.size(), pairs.size());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_NEAR(all[i], small[i], 1e-12);
}

TEST(GradInstance, EveryVariantPassesGradientCheck) {
  for (auto v : kAllVariants) {
    GradInstanceConfig c;
    c.variant = v;
    auto report = check_model_gradients(c);
    EXPECT_TRUE(report.passed()) << display_name(v) << " max rel " << report.max_rel_error();
    EXPECT_LE(report.max_rel_error(), 1e-4);
  }
}

TEST(GradInstance, CoversEveryParameter) {
  auto g = instance();
  auto report = check_model_gradients({});
  EXPECT_EQ(report.entries.size(), g.model->params().entries().size());
}

}  // namespace
}  // namespace sifn::model
