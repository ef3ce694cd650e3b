// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "manifest.hpp"
#include "sifn/cli/app.hpp"
#include "sifn/common/binary_io.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/eval/ablation.hpp"
#include "sifn/eval/attention_export.hpp"
#include "sifn/eval/evaluate.hpp"
#include "sifn/eval/metrics.hpp"
#include "sifn/model/checkpoint.hpp"

namespace sifn::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw ConfigError(std::string(what) + ": '" + s + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(std::string(what) + " is empty");
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split_list(text)) {
    if (s.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("seeds: '" + s + "' is not a nonnegative integer");
    }
    out.push_back(std::stoull(s));
  }
  if (out.empty()) throw ConfigError("seeds is empty");
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// Resolves the string-valued training flags into the typed config.
train::TrainConfig resolve(const TrainingFlags& f, embeddings::StoreSpec& store) {
  auto cfg = f.config;
  cfg.variant = model::variant_from_string(f.variant);
  cfg.lambda_grid = parse_doubles(f.lambda_grid, "lambda grid");
  cfg.clip_norm = f.clip_norm > 0.0 ? std::optional<double>(f.clip_norm) : std::nullopt;
  cfg.validate();
  store.backend = embeddings::backend_from_string(f.backend);
  store.word_vectors = f.word_vectors;
  store.store_index = f.store_index;
  store.store_matrix = f.store_matrix;
  return cfg;
}

void check_shape(const TrainingFlags& f, const corpus::Dataset& ds) {
  if ((f.m != 0 && f.m != ds.m()) || (f.l != 0 && f.l != ds.l())) {
    throw ConfigError("--m/--l (" + std::to_string(f.m) + ", " + std::to_string(f.l) +
                      ") do not match the dataset (" + std::to_string(ds.m()) + ", " + std::to_string(ds.l()) +
                      "); rerun preprocess to change them");
  }
}

ordered_json training_json(const train::TrainConfig& c, const embeddings::StoreSpec& s, const corpus::Dataset& ds) {
  ordered_json j;
  j["k"] = c.k;
  j["batch_size"] = c.batch_size;
  j["lr"] = c.learning_rate;
  j["dropout"] = c.dropout;
  j["lambda"] = c.lambda;
  j["lambda_grid"] = c.lambda_grid;
  j["m"] = ds.m();
  j["l"] = ds.l();
  j["variant"] = model::to_string(c.variant);
  j["seed"] = c.seed;
  j["max_epochs"] = c.max_epochs;
  j["patience"] = c.patience;
  j["clip_norm"] = c.clip_norm ? *c.clip_norm : 0.0;
  j["timings"] = c.record_seconds;
  j["backend"] = embeddings::to_string(s.backend);
  j["word_vectors"] = s.word_vectors;
  j["store_index"] = s.store_index;
  j["store_matrix"] = s.store_matrix;
  return j;
}

std::string dataset_name_of(const std::string& explicit_name, const std::string& data_dir) {
  if (!explicit_name.empty()) return explicit_name;
  auto p = fs::path(data_dir).lexically_normal();
  if (p.filename().empty()) p = p.parent_path();
  return p.filename().string().empty() ? "dataset" : p.filename().string();
}

}  // namespace

int run_preprocess(const PreprocessOptions& o, std::ostream& out, std::ostream& err) {
  RunManifest mf("preprocess");
  auto parsed = corpus::parse_reviews(o.input);
  for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
  const auto ds = corpus::preprocess(std::move(parsed.records), o.config);
  ds.save(o.out);

  const auto& c = o.config;
  mf.config = {{"min_reviews", c.min_reviews}, {"m", c.m}, {"l", c.l}, {"min_freq", c.min_freq},
               {"ratios", {c.ratios.train, c.ratios.validation, c.ratios.test}}, {"seed", c.seed}};
  mf.inputs["reviews"] = o.input;
  mf.outputs = {{"vocab", "vocab.tsv"}, {"splits", "splits.jsonl"}, {"profiles", "profiles.bin"},
                {"stats", "stats.json"}};
  mf.seed = c.seed;
  mf.finish(o.out);

  out << "users " << ds.stats.users << ", items " << ds.stats.items << ", ratings " << ds.stats.ratings
      << ", density " << eval::format_significant(ds.stats.density_percent, 3) << "%\n"
      << "pairs: train " << ds.report.train_pairs << ", validation " << ds.report.validation_pairs << ", test "
      << ds.report.test_pairs << "; vocabulary " << ds.vocab.size() << '\n';
  if (parsed.invalid_lines > 0) err << "skipped " << parsed.invalid_lines << " invalid lines\n";
  return kOk;
}

int run_synth(const SynthOptions& o, std::ostream& out, std::ostream&) {
  RunManifest mf("synth");
  const auto records = corpus::generate_synthetic(o.config);
  fs::create_directories(o.out);
  corpus::write_reviews(fs::path(o.out) / "reviews.jsonl", records);
  corpus::write_synthetic_vectors(fs::path(o.out) / "vectors.txt", o.config, o.vector_dim);

  const auto& c = o.config;
  mf.config = {{"users", c.users}, {"items", c.items}, {"density", c.density}, {"latent_dim", c.latent_dim},
               {"noise", c.noise}, {"vocab_size", c.vocab_size}, {"review_length", c.review_length},
               {"sentiment_words", c.sentiment_words}, {"sentiment_signal", c.sentiment_signal},
               {"vector_dim", o.vector_dim}, {"seed", c.seed}};
  mf.outputs = {{"reviews", "reviews.jsonl"}, {"word_vectors", "vectors.txt"}};
  mf.seed = c.seed;
  mf.finish(o.out);
  out << "wrote " << records.size() << " reviews\n";
  return kOk;
}

int run_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  RunManifest mf("train");
  const auto ds = corpus::Dataset::load(o.data);
  check_shape(o.flags, ds);
  embeddings::StoreSpec store;
  auto cfg = resolve(o.flags, store);
  cfg.record_seconds = o.timings;

  std::string history;
  const auto result = train::train(cfg, ds, store, [&](const train::EpochRecord& r) {
    history += train::history_line(r) + "\n";
    out << "epoch " << r.epoch << "  loss " << fixed(r.loss, 4) << "  rating " << fixed(r.rating_loss, 4)
        << "  sentiment " << fixed(r.sentiment_loss, 4) << "  val_mse " << fixed(r.val_mse, 4) << '\n';
  });
  fs::create_directories(o.out);
  write_file_atomic(fs::path(o.out) / "history.jsonl", history);
  model::save_checkpoint(fs::path(o.out) / "checkpoint.bin", result.best);

  mf.config = training_json(cfg, store, ds);
  mf.inputs["data"] = o.data;
  mf.outputs = {{"checkpoint", "checkpoint.bin"}, {"history", "history.jsonl"}};
  mf.seed = cfg.seed;
  mf.finish(o.out);

  if (result.aborted) {
    err << "training aborted: " << *result.aborted << "; kept the checkpoint from epoch " << result.best.best_epoch
        << '\n';
    return kNumericError;
  }
  out << model::display_name(cfg.variant) << ": best epoch " << result.best.best_epoch << ", validation MSE "
      << fixed(result.best.val_mse, 4) << ", " << result.best.parameter_count() << " parameters"
      << (result.stopped_early ? " (early stop)" : "") << '\n';
  return kOk;
}

int run_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream&) {
  RunManifest mf("evaluate");
  const auto ds = corpus::Dataset::load(o.data);
  const auto ck = model::load_checkpoint(o.checkpoint);
  const auto fitted = train::instantiate(ck, ds);
  const auto split = corpus::split_tag_from_string(o.split);
  const auto ev = eval::evaluate(fitted, ds, split);
  const auto name = dataset_name_of(o.dataset_name, o.data);

  fs::create_directories(o.out);
  const auto results_path = fs::path(o.out) / "results.json";
  auto table = eval::load_results(results_path);
  table[ev.method][name] = ev.mse;
  eval::save_results(results_path, table);

  mf.config = {{"split", o.split}, {"dataset_name", name}};
  mf.inputs = {{"data", o.data}, {"checkpoint", o.checkpoint}};
  mf.outputs["results"] = "results.json";
  mf.seed = ck.config.seed;
  mf.finish(o.out);

  out << ev.method << " " << o.split << " MSE " << fixed(ev.mse, 4) << " over " << ev.pairs << " pairs";
  if (ev.sentiment_accuracy) out << ", sentiment accuracy " << fixed(*ev.sentiment_accuracy, 4);
  out << '\n';
  return kOk;
}

int run_ablate(const AblateOptions& o, std::ostream& out, std::ostream&) {
  RunManifest mf("ablate");
  const auto ds = corpus::Dataset::load(o.data);
  check_shape(o.flags, ds);
  embeddings::StoreSpec store;
  eval::AblationConfig ac;
  ac.base = resolve(o.flags, store);
  ac.seeds = parse_seeds(o.seeds);
  const auto name = dataset_name_of(o.dataset_name, o.data);
  const auto report = eval::run_ablation(ac, ds, store, name);

  fs::create_directories(o.out);
  write_file_atomic(fs::path(o.out) / "ablation.json", eval::ablation_json(report));
  const auto results_path = fs::path(o.out) / "results.json";
  auto table = eval::load_results(results_path);
  for (const auto& row : report.rows) table[model::display_name(row.variant)][name] = row.median_mse;
  eval::save_results(results_path, table);

  mf.config = training_json(ac.base, store, ds);
  mf.config["seeds"] = ac.seeds;
  mf.config["dataset_name"] = name;
  mf.inputs["data"] = o.data;
  mf.outputs = {{"ablation", "ablation.json"}, {"results", "results.json"}};
  mf.seed = ac.seeds.front();
  mf.finish(o.out);

  out << "variant\tmedian_mse\tincrement\n";
  for (const auto& row : report.rows) {
    out << model::display_name(row.variant) << '\t' << fixed(row.median_mse, 4) << '\t'
        << (row.increment >= 0 ? "+" : "") << fixed(row.increment, 4) << '\n';
  }
  return kOk;
}

int run_tune_lambda(const TuneOptions& o, std::ostream& out, std::ostream&) {
  RunManifest mf("tune-lambda");
  const auto ds = corpus::Dataset::load(o.data);
  check_shape(o.flags, ds);
  embeddings::StoreSpec store;
  const auto cfg = resolve(o.flags, store);
  const auto report = train::tune_lambda(cfg, ds, store);

  ordered_json j;
  j["schema_version"] = 1;
  j["trials"] = ordered_json::array();
  for (const auto& t : report.trials) {
    j["trials"].push_back({{"lambda", t.lambda}, {"val_mse", t.val_mse}, {"best_epoch", t.best_epoch}});
  }
  j["best_lambda"] = report.best_lambda;
  fs::create_directories(o.out);
  write_file_atomic(fs::path(o.out) / "lambda.json", j.dump(2) + "\n");

  mf.config = training_json(cfg, store, ds);
  mf.inputs["data"] = o.data;
  mf.outputs["lambda"] = "lambda.json";
  mf.seed = cfg.seed;
  mf.finish(o.out);

  out << "lambda\tval_mse\n";
  for (const auto& t : report.trials) out << t.lambda << '\t' << fixed(t.val_mse, 4) << '\n';
  out << "best lambda " << report.best_lambda << '\n';
  return kOk;
}

int run_visualize(const VisualizeOptions& o, std::ostream& out, std::ostream&) {
  RunManifest mf("visualize");
  const auto ds = corpus::Dataset::load(o.data);
  const auto ck = model::load_checkpoint(o.checkpoint);
  const auto fitted = train::instantiate(ck, ds);

  std::vector<corpus::Pair> pairs;
  for (const auto& spec : o.pairs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("--pair expects user:item, got '" + spec + "'");
    pairs.push_back(eval::find_pair(ds, spec.substr(0, colon), spec.substr(colon + 1)));
  }
  if (pairs.empty()) {
    for (const auto& p : ds.pairs_in(corpus::split_tag_from_string(o.split))) {
      if (pairs.size() >= o.limit) break;
      pairs.push_back(p);
    }
  }
  const auto dir = fs::path(o.out) / "attention";
  const auto written = eval::export_attention(fitted, ds, pairs, dir);

  mf.config = {{"pairs", o.pairs}, {"limit", o.limit}, {"split", o.split}};
  mf.inputs = {{"data", o.data}, {"checkpoint", o.checkpoint}};
  mf.outputs["attention"] = ordered_json::array();
  for (const auto& p : written) {
    mf.outputs["attention"].push_back(fs::relative(p, o.out).string());
  }
  mf.seed = ck.config.seed;
  mf.finish(o.out);
  out << "wrote " << written.size() << " attention reports to " << dir.string() << '\n';
  return kOk;
}

int run_gradcheck(const GradcheckOptions& o, std::ostream& out, std::ostream& err) {
  auto instance = o.instance;
  instance.variant = model::variant_from_string(o.variant);
  ag::GradCheckOptions opts;
  opts.eps = o.eps;
  opts.tolerance = o.tolerance;
  opts.abs_floor = o.abs_floor;
  const auto report = model::check_model_gradients(instance, opts);

  out << "parameter\telements\tmax_rel_error\tmax_abs_error\tstatus\n";
  for (const auto& e : report.entries) {
    char rel[32];
    char abs[32];
    std::snprintf(rel, sizeof rel, "%.3e", e.max_rel_error);
    std::snprintf(abs, sizeof abs, "%.3e", e.max_abs_error);
    out << e.name << '\t' << e.elements << '\t' << rel << '\t' << abs << '\t' << (e.passed ? "ok" : "FAIL") << '\n';
  }
  char worst[32];
  std::snprintf(worst, sizeof worst, "%.3e", report.max_rel_error());
  if (!report.passed()) {
    err << "gradient check failed: max relative error " << worst << " > " << o.tolerance << '\n';
    return kNumericError;
  }
  out << "passed: max relative error " << worst << " <= " << o.tolerance << '\n';
  return kOk;
}

}  // namespace sifn::cli
