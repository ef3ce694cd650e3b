// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/corpus/dataset.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sifn/common/binary_io.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/corpus/kcore.hpp"
#include "sifn/corpus/tokenizer.hpp"

namespace sifn::corpus {

namespace {

using nlohmann::json;

constexpr std::string_view kProfilesMagic = "SIFNPROF";

void resolve_slots(Pair& p, const Profiles& profiles) {
  if (p.split != SplitTag::kTrain) return;
  if (p.user != ProfileSet::kColdStart) p.user_slot = profiles.users[p.user].slot_of_record(p.record_id);
  if (p.item != ProfileSet::kColdStart) p.item_slot = profiles.items[p.item].slot_of_record(p.record_id);
}

void write_profile_set(ByteWriter& w, const ProfileSet& set, std::uint8_t side) {
  for (std::size_t i = 1; i < set.size(); ++i) {
    const Profile& p = set[i];
    w.put_u8(side);
    w.put_string(p.owner_id);
    for (const auto& slot : p.slots) {
      w.put_u8(slot.real ? 1 : 0);
      if (!slot.real) continue;
      w.put_i64(static_cast<std::int64_t>(slot.record_id));
      w.put_f64(slot.rating);
      w.put_u8(static_cast<std::uint8_t>(slot.label));
      w.put_i64(slot.timestamp);
      w.put_u32(static_cast<std::uint32_t>(slot.review.true_length));
      for (auto id : slot.review.token_ids) w.put_u32(static_cast<std::uint32_t>(id));
      w.put_string(slot.text);
    }
  }
}

Profile read_profile(ByteReader& r, std::size_t m, std::size_t l) {
  Profile p = Profile::empty(r.string(), m, l);
  for (auto& slot : p.slots) {
    if (r.u8() == 0) continue;
    slot.real = true;
    slot.record_id = static_cast<std::size_t>(r.i64());
    slot.rating = r.f64();
    const auto label = r.u8();
    if (label >= kNumSentimentClasses) throw DataError("profiles.bin: bad sentiment label");
    slot.label = static_cast<SentimentLabel>(label);
    slot.timestamp = r.i64();
    slot.review.true_length = r.u32();
    if (slot.review.true_length == 0 || slot.review.true_length > l) {
      throw DataError("profiles.bin: bad review length for '" + p.owner_id + "'");
    }
    for (std::size_t i = 0; i < l; ++i) {
      slot.review.token_ids[i] = r.u32();
      slot.review.mask[i] = i < slot.review.true_length ? 1 : 0;
    }
    slot.text = r.string();
  }
  return p;
}

}  // namespace

std::vector<Pair> Dataset::pairs_in(SplitTag tag) const {
  std::vector<Pair> out;
  for (const auto& p : pairs) {
    if (p.split == tag) out.push_back(p);
  }
  return out;
}

Dataset preprocess(std::vector<ReviewRecord> records, const PreprocessConfig& config) {
  Dataset ds;
  ds.config = config;
  ds.report.input_records = records.size();

  std::vector<ReviewRecord> nonempty;
  nonempty.reserve(records.size());
  for (auto& r : records) {
    if (tokenize(r.text).empty()) {
      ++ds.report.dropped_empty;
    } else {
      nonempty.push_back(std::move(r));
    }
  }
  auto kept = kcore_filter(std::move(nonempty), config.min_reviews);
  ds.report.kept_records = kept.size();
  ds.stats = dataset_stats(kept);

  const auto idx = split_indices(kept.size(), config.ratios, config.seed);
  std::vector<SplitTag> tags(kept.size(), SplitTag::kTrain);
  for (auto i : idx.validation) tags[i] = SplitTag::kValidation;
  for (auto i : idx.test) tags[i] = SplitTag::kTest;

  std::vector<ReviewRecord> train;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (tags[i] == SplitTag::kTrain) train.push_back(kept[i]);
  }
  ds.vocab = build_vocab(train, config.min_freq);
  ds.profiles = build_profiles(train, config.m, config.l, ds.vocab);

  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& r = kept[i];
    Pair p;
    p.pair_id = i;
    p.user_id = r.user_id;
    p.item_id = r.item_id;
    p.user = ds.profiles.users.find(r.user_id);
    p.item = ds.profiles.items.find(r.item_id);
    p.rating = r.rating;
    p.record_id = r.id;
    p.split = tags[i];
    resolve_slots(p, ds.profiles);
    if (p.split != SplitTag::kTrain) {
      if (p.user == ProfileSet::kColdStart) ++ds.report.cold_start_users;
      if (p.item == ProfileSet::kColdStart) ++ds.report.cold_start_items;
    }
    ds.pairs.push_back(p);
    ds.pair_texts.push_back(r.text);
  }
  ds.report.train_pairs = idx.train.size();
  ds.report.validation_pairs = idx.validation.size();
  ds.report.test_pairs = idx.test.size();
  return ds;
}

void Dataset::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  vocab.save_tsv(dir / "vocab.tsv");

  std::ostringstream splits;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    json line = {{"pair", p.pair_id},
                 {"user", p.user_id},
                 {"item", p.item_id},
                 {"rating", p.rating},
                 {"split", to_string(p.split)},
                 {"record", p.record_id},
                 {"text", pair_texts[i]}};
    splits << line.dump() << '\n';
  }
  write_file_atomic(dir / "splits.jsonl", splits.str());

  ByteWriter w;
  w.put_magic(kProfilesMagic);
  w.put_u32(kProfilesVersion);
  w.put_u32(static_cast<std::uint32_t>(m()));
  w.put_u32(static_cast<std::uint32_t>(l()));
  w.put_u32(static_cast<std::uint32_t>(profiles.users.size() - 1));
  w.put_u32(static_cast<std::uint32_t>(profiles.items.size() - 1));
  write_profile_set(w, profiles.users, 0);
  write_profile_set(w, profiles.items, 1);
  w.put_trailing_crc();
  write_file_atomic(dir / "profiles.bin", w.bytes());

  json st = {{"schema_version", kSchemaVersion},
             {"users", stats.users},
             {"items", stats.items},
             {"ratings", stats.ratings},
             {"density_percent", stats.density_percent},
             {"config",
              {{"min_reviews", config.min_reviews},
               {"m", config.m},
               {"l", config.l},
               {"min_freq", config.min_freq},
               {"ratios", {config.ratios.train, config.ratios.validation, config.ratios.test}},
               {"seed", config.seed}}},
             {"report",
              {{"input_records", report.input_records},
               {"dropped_empty", report.dropped_empty},
               {"kept_records", report.kept_records},
               {"train_pairs", report.train_pairs},
               {"validation_pairs", report.validation_pairs},
               {"test_pairs", report.test_pairs},
               {"cold_start_users", report.cold_start_users},
               {"cold_start_items", report.cold_start_items}}},
             {"vocab_size", vocab.size()}};
  write_file_atomic(dir / "stats.json", st.dump(2) + "\n");
}

Dataset Dataset::load(const std::filesystem::path& dir) {
  Dataset ds;
  ds.vocab = Vocabulary::load_tsv(dir / "vocab.tsv");

  {
    std::ifstream in(dir / "stats.json");
    if (!in) throw DataError("cannot read " + (dir / "stats.json").string());
    json st = json::parse(in, nullptr, false);
    if (st.is_discarded() || st.value("schema_version", 0) != kSchemaVersion) {
      throw DataError("stats.json: unsupported or malformed file");
    }
    ds.stats = DatasetStats{st.at("users"), st.at("items"), st.at("ratings"), st.at("density_percent")};
    const auto& c = st.at("config");
    ds.config.min_reviews = c.at("min_reviews");
    ds.config.m = c.at("m");
    ds.config.l = c.at("l");
    ds.config.min_freq = c.at("min_freq");
    ds.config.ratios = SplitRatios{c.at("ratios")[0], c.at("ratios")[1], c.at("ratios")[2]};
    ds.config.seed = c.at("seed");
    const auto& rep = st.at("report");
    ds.report.input_records = rep.at("input_records");
    ds.report.dropped_empty = rep.at("dropped_empty");
    ds.report.kept_records = rep.at("kept_records");
    ds.report.train_pairs = rep.at("train_pairs");
    ds.report.validation_pairs = rep.at("validation_pairs");
    ds.report.test_pairs = rep.at("test_pairs");
    ds.report.cold_start_users = rep.at("cold_start_users");
    ds.report.cold_start_items = rep.at("cold_start_items");
  }

  const auto raw = read_file_bytes(dir / "profiles.bin");
  ByteReader r(verify_trailing_crc(raw, "profiles.bin"));
  r.expect_magic(kProfilesMagic, "profiles.bin");
  if (const auto version = r.u32(); version != kProfilesVersion) {
    throw DataError("profiles.bin: unsupported version " + std::to_string(version));
  }
  const std::size_t m = r.u32();
  const std::size_t l = r.u32();
  const std::size_t n_users = r.u32();
  const std::size_t n_items = r.u32();
  ds.profiles.users = ProfileSet(m, l);
  ds.profiles.items = ProfileSet(m, l);
  for (std::size_t i = 0; i < n_users + n_items; ++i) {
    const auto side = r.u8();
    if (side > 1) throw DataError("profiles.bin: bad side tag");
    auto profile = read_profile(r, m, l);
    (side == 0 ? ds.profiles.users : ds.profiles.items).add(std::move(profile));
  }
  if (r.remaining() != 0) throw DataError("profiles.bin: trailing bytes");

  std::ifstream in(dir / "splits.jsonl");
  if (!in) throw DataError("cannot read " + (dir / "splits.jsonl").string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw DataError("splits.jsonl:" + std::to_string(line_no) + ": invalid JSON");
    Pair p;
    p.pair_id = j.at("pair");
    p.user_id = j.at("user").get<std::string>();
    p.item_id = j.at("item").get<std::string>();
    p.user = ds.profiles.users.find(p.user_id);
    p.item = ds.profiles.items.find(p.item_id);
    p.rating = j.at("rating");
    p.record_id = j.at("record");
    p.split = split_tag_from_string(j.at("split").get<std::string>());
    resolve_slots(p, ds.profiles);
    ds.pairs.push_back(p);
    ds.pair_texts.push_back(j.value("text", std::string()));
  }
  return ds;
}

}  // namespace sifn::corpus
