// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstring>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "json.hpp"
#include "sifn/autograd/ops.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/corpus/profiles.hpp"
#include "sifn/embeddings/contextual_store.hpp"
#include "sifn/embeddings/factory.hpp"
#include "sifn/embeddings/store.hpp"
#include "temp_dir.hpp"

namespace sifn::embeddings {
namespace {

using corpus::TokenizedReview;
using corpus::Vocabulary;

Vocabulary make_vocab(std::initializer_list<const char*> words) {
  Vocabulary v;
  for (const char* w : words) v.add(w);
  return v;
}

std::vector<double> row_of(const ag::Tensor& t, std::size_t r) {
  const auto k = t.dim(1);
  return {t.data().begin() + static_cast<std::ptrdiff_t>(r * k),
          t.data().begin() + static_cast<std::ptrdiff_t>((r + 1) * k)};
}

TEST(Backend, Names) {
  for (auto b : {Backend::kStaticTable, Backend::kTrainableTable, Backend::kContextualStore}) {
    EXPECT_EQ(backend_from_string(to_string(b)), b);
  }
  EXPECT_THROW(backend_from_string("bert"), ConfigError);
}

TEST(StaticTable, DirectReadAndZeroPad) {
  testing::TempDir dir;
  auto vocab = make_vocab({"good", "bad"});
  StaticTableReport report;
  auto store = load_static_table(dir.write("v.txt", "good 0.1 0.2\nother 1 1\n"), vocab, 3, &report);
  EXPECT_EQ(store->backend(), Backend::kStaticTable);
  EXPECT_EQ(store->dim(), 2u);
  const auto good = store->row(vocab.id("good"));
  EXPECT_EQ(good[0], 0.1);
  EXPECT_EQ(good[1], 0.2);
  EXPECT_EQ(store->row(corpus::kPadId)[0], 0.0);
  EXPECT_EQ(store->row(corpus::kPadId)[1], 0.0);
  EXPECT_EQ(report.found, 1u);
  EXPECT_EQ(report.file_vectors, 2u);
  EXPECT_DOUBLE_EQ(report.coverage(), 0.5);
  EXPECT_TRUE(store->parameters().empty());
  EXPECT_FALSE(store->table().requires_grad());
}

TEST(StaticTable, MissingTokensGetSmallRandomRows) {
  testing::TempDir dir;
  auto vocab = make_vocab({"good", "bad"});
  auto store = load_static_table(dir.write("v.txt", "good 0.1 0.2\n"), vocab, 3);
  const auto bad = store->row(vocab.id("bad"));
  EXPECT_NE(bad[0], 0.0);
  EXPECT_LT(std::abs(bad[0]), 0.06);
}

TEST(StaticTable, MalformedFiles) {
  testing::TempDir dir;
  auto vocab = make_vocab({"a"});
  EXPECT_THROW(load_static_table(dir.write("a.txt", "a 1 2\nb 1\n"), vocab), DataError);
  EXPECT_THROW(load_static_table(dir.write("b.txt", "a 1 x\n"), vocab), DataError);
  EXPECT_THROW(load_static_table(dir.write("c.txt", ""), vocab), DataError);
  EXPECT_THROW(load_static_table(dir / "missing.txt", vocab), DataError);
}

TEST(TrainableTable, DeterministicAndCentred) {
  Vocabulary v;
  for (int i = 0; i < 400; ++i) v.add("w" + std::to_string(i));
  auto a = init_trainable_table(v, 8, 11);
  auto b = init_trainable_table(v, 8, 11);
  EXPECT_TRUE(std::equal(a->table().data().begin(), a->table().data().end(), b->table().data().begin()));
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t r = 1; r < v.size(); ++r) {
    for (double x : a->row(r)) {
      sum += x;
      ++n;
    }
  }
  const double mean = sum / static_cast<double>(n);
  EXPECT_LT(std::abs(mean), 3 * 0.01 / std::sqrt(static_cast<double>(n)));
  for (double x : a->row(corpus::kPadId)) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(a->backend(), Backend::kTrainableTable);
  ASSERT_EQ(a->parameters().size(), 1u);
  EXPECT_EQ(a->parameters()[0].name, TableStore::kParamName);
  EXPECT_THROW(init_trainable_table(v, 0, 1), ConfigError);
}

TEST(TrainableTable, PadRowsAreZeroAndGetNoGradient) {
  auto vocab = make_vocab({"a", "b"});
  auto store = init_trainable_table(vocab, 3, 5);
  auto review = TokenizedReview::from_ids(std::vector<std::size_t>{vocab.id("a"), vocab.id("b")}, 4);
  auto words = encode_review(*store, review);
  ASSERT_EQ(words.shape(), (ag::Shape{4, 3}));
  EXPECT_EQ(row_of(words, 0), std::vector<double>(store->row(vocab.id("a")).begin(), store->row(vocab.id("a")).end()));
  EXPECT_EQ(row_of(words, 2), std::vector<double>(3, 0.0));
  EXPECT_EQ(row_of(words, 3), std::vector<double>(3, 0.0));

  ag::sum_all(ag::mul(words, words)).backward();
  auto grad = store->table().grad();
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(grad[corpus::kPadId * 3 + j], 0.0);
  EXPECT_NE(grad[vocab.id("a") * 3], 0.0);
}

TEST(TableStore, EncodingIsPointwise) {
  auto vocab = make_vocab({"a", "b", "c"});
  auto store = init_trainable_table(vocab, 2, 5);
  std::vector<std::size_t> ids{vocab.id("a"), vocab.id("b"), vocab.id("c")};
  std::vector<std::size_t> perm{vocab.id("c"), vocab.id("a"), vocab.id("b")};
  auto x = encode_review(*store, TokenizedReview::from_ids(ids, 3));
  auto y = encode_review(*store, TokenizedReview::from_ids(perm, 3));
  EXPECT_EQ(row_of(y, 0), row_of(x, 2));
  EXPECT_EQ(row_of(y, 1), row_of(x, 0));
  EXPECT_EQ(row_of(y, 2), row_of(x, 1));
}

TEST(TableStore, AllPadReviewIsZero) {
  auto vocab = make_vocab({"a"});
  auto store = init_trainable_table(vocab, 2, 5);
  auto x = encode_review(*store, TokenizedReview::padding(3));
  for (double v : x.data()) EXPECT_EQ(v, 0.0);
}

struct StoreFiles {
  std::filesystem::path index;
  std::filesystem::path matrix;
};

StoreFiles write_store(const testing::TempDir& dir, std::size_t k, std::size_t l,
                       const std::vector<std::pair<ReviewKey, std::vector<float>>>& blocks) {
  ContextualStoreWriter w(k, l);
  for (const auto& [key, m] : blocks) w.add(key, m);
  StoreFiles f{dir / "store.jsonl", dir / "store.emb"};
  w.write(f.index, f.matrix);
  return f;
}

TEST(ContextualStore, RoundTripIsBitIdentical) {
  testing::TempDir dir;
  std::vector<float> m1{0.1f, -2.5f, 3.25f, 1e-7f, 7.0f, -0.0f};
  std::vector<float> m2{1, 2, 3, 4, 5, 6};
  auto files = write_store(dir, 2, 3, {{{"u1", 0}, m1}, {{"u1", 1}, m2}});
  auto store = load_contextual_store(files.index, files.matrix, 2);
  EXPECT_EQ(store->dim(), 2u);
  EXPECT_EQ(store->l(), 3u);
  EXPECT_EQ(store->size(), 2u);
  auto back = store->lookup({"u1", 0});
  ASSERT_EQ(back.size(), m1.size());
  EXPECT_EQ(std::memcmp(back.data(), m1.data(), m1.size() * sizeof(float)), 0);
  EXPECT_TRUE(store->contains({"u1", 1}));
  EXPECT_FALSE(store->contains({"u2", 0}));
}

TEST(ContextualStore, FileLayout) {
  testing::TempDir dir;
  auto files = write_store(dir, 2, 1, {{{"a", 0}, {1, 2}}, {{"b", 3}, {3, 4}}});
  const auto bytes = testing::read_text(files.matrix);
  EXPECT_EQ(bytes.substr(0, 8), "SIFNEMB1");
  EXPECT_EQ(bytes.size(), kContextualHeaderBytes + 2 * 2 * sizeof(float) + 4);
  std::istringstream index(testing::read_text(files.index));
  std::string line;
  std::vector<std::size_t> offsets;
  while (std::getline(index, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("owner_id"));
    EXPECT_TRUE(j.contains("ordinal"));
    offsets.push_back(j.at("offset").get<std::size_t>());
  }
  ASSERT_EQ(offsets.size(), 2u);
  EXPECT_LT(offsets[0], offsets[1]);
}

TEST(ContextualStore, MissingKeyIsNamed) {
  testing::TempDir dir;
  auto files = write_store(dir, 1, 1, {{{"u1", 0}, {1}}});
  auto store = load_contextual_store(files.index, files.matrix);
  try {
    store->lookup({"ghost", 4});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos) << e.what();
  }
}

TEST(ContextualStore, TruncatedOrCorruptMatrixFailsChecksum) {
  testing::TempDir dir;
  auto files = write_store(dir, 2, 2, {{{"u", 0}, {1, 2, 3, 4}}});
  auto bytes = testing::read_text(files.matrix);
  dir.write("store.emb", bytes.substr(0, bytes.size() - 6));
  EXPECT_THROW(load_contextual_store(files.index, files.matrix), DataError);
  bytes[20] ^= 0x01;
  dir.write("store.emb", bytes);
  EXPECT_THROW(load_contextual_store(files.index, files.matrix), DataError);
}

TEST(ContextualStore, WidthMismatch) {
  testing::TempDir dir;
  auto files = write_store(dir, 2, 1, {{{"u", 0}, {1, 2}}});
  EXPECT_THROW(load_contextual_store(files.index, files.matrix, 3), DataError);
}

TEST(ContextualStore, BadIndex) {
  testing::TempDir dir;
  auto files = write_store(dir, 1, 1, {{{"u", 0}, {1}}, {{"u", 1}, {2}}});
  auto index = testing::read_text(files.index);
  const auto first = index.substr(0, index.find('\n') + 1);
  dir.write("store.jsonl", first + first);
  EXPECT_THROW(load_contextual_store(files.index, files.matrix), DataError);
}

TEST(ContextualStore, SameTokenDiffersAcrossReviews) {
  testing::TempDir dir;
  // Token "bank" sits at position 1 of both reviews with different vectors.
  auto files = write_store(dir, 2, 2, {{{"u", 0}, {0.1f, 0.2f, 0.9f, 0.1f}}, {{"u", 1}, {0.3f, 0.4f, -0.5f, 0.7f}}});
  auto store = load_contextual_store(files.index, files.matrix);
  auto vocab = make_vocab({"river", "bank", "money"});
  auto r0 = TokenizedReview::from_ids(std::vector<std::size_t>{vocab.id("river"), vocab.id("bank")}, 2);
  auto r1 = TokenizedReview::from_ids(std::vector<std::size_t>{vocab.id("money"), vocab.id("bank")}, 2);
  auto a = encode_review(*store, r0, {"u", 0});
  auto b = encode_review(*store, r1, {"u", 1});
  EXPECT_NE(row_of(a, 1), row_of(b, 1));
  EXPECT_EQ(row_of(a, 1), (std::vector<double>{0.9f, 0.1f}));
}

TEST(ContextualStore, PadPositionsAreZeroAndLMustMatch) {
  testing::TempDir dir;
  auto files = write_store(dir, 1, 3, {{{"u", 0}, {1, 2, 3}}});
  auto store = load_contextual_store(files.index, files.matrix);
  auto vocab = make_vocab({"a"});
  auto review = TokenizedReview::from_ids(std::vector<std::size_t>{vocab.id("a")}, 3);
  auto x = encode_review(*store, review, {"u", 0});
  EXPECT_EQ(std::vector<double>(x.data().begin(), x.data().end()), (std::vector<double>{1, 0, 0}));
  EXPECT_THROW(encode_review(*store, TokenizedReview::from_ids(std::vector<std::size_t>{2}, 2), {"u", 0}),
               ShapeError);
}

TEST(ContextualStore, CoverageOfADataset) {
  testing::TempDir dir;
  auto ds = testing::small_dataset();
  ContextualStoreWriter w(2, ds.l());
  std::vector<float> block(2 * ds.l(), 0.5f);
  std::size_t skipped = 0;
  for (const auto* set : {&ds.profiles.users, &ds.profiles.items}) {
    for (const auto& profile : set->profiles()) {
      for (std::size_t j = 0; j < profile.slots.size(); ++j) {
        if (!profile.slots[j].real) continue;
        if (skipped == 0) {
          ++skipped;
          continue;
        }
        w.add({profile.owner_id, j}, block);
      }
    }
  }
  w.write(dir / "i.jsonl", dir / "m.emb");
  auto store = load_contextual_store(dir / "i.jsonl", dir / "m.emb");
  auto cov = scan_coverage(*store, ds);
  EXPECT_EQ(cov.missing.size(), 1u);
  EXPECT_EQ(cov.resolved + 1, cov.slots);
  EXPECT_LT(cov.fraction(), 1.0);

  w.add(cov.missing[0], block);
  w.write(dir / "i.jsonl", dir / "m.emb");
  auto full = load_contextual_store(dir / "i.jsonl", dir / "m.emb");
  EXPECT_EQ(scan_coverage(*full, ds).fraction(), 1.0);
}

TEST(Factory, VariantResolution) {
  StoreSpec spec;
  EXPECT_EQ(resolve_for_variant(spec, model::Variant::kFull).backend, Backend::kTrainableTable);
  EXPECT_THROW(resolve_for_variant(spec, model::Variant::kW2v), ConfigError);
  spec.word_vectors = "vectors.txt";
  EXPECT_EQ(resolve_for_variant(spec, model::Variant::kW2v).backend, Backend::kStaticTable);
}

TEST(Factory, ContextualStoreMustMatchL) {
  testing::TempDir dir;
  auto ds = testing::small_dataset();
  auto files = write_store(dir, 2, ds.l() + 1, {{{"u", 0}, std::vector<float>(2 * (ds.l() + 1), 0.f)}});
  StoreSpec spec;
  spec.backend = Backend::kContextualStore;
  spec.store_index = files.index.string();
  spec.store_matrix = files.matrix.string();
  EXPECT_THROW(open_store(spec, ds, 4, 1), Error);
}

}  // namespace
}  // namespace sifn::embeddings
