// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/cli/app.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config_file.hpp"
#include "sifn/common/errors.hpp"

namespace sifn::cli {

namespace {

CLI::App* subcommand(CLI::App& app, const char* name, const char* help) {
  auto* sub = app.add_subcommand(name, help);
  // Config-file values are spliced in ahead of the flags; the last one wins.
  sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--config", "flat key = value file; flags given on the command line take precedence");
  return sub;
}

void add_training_flags(CLI::App* sub, TrainingFlags& f) {
  auto& c = f.config;
  sub->add_option("--k", c.k, "embedding and hidden width")->capture_default_str();
  sub->add_option("--batch-size", c.batch_size, "pairs per minibatch")->capture_default_str();
  sub->add_option("--lr", c.learning_rate, "Adam learning rate")->capture_default_str();
  sub->add_option("--dropout", c.dropout, "dropout rate on review vectors and aggregates")->capture_default_str();
  sub->add_option("--lambda", c.lambda, "sentiment loss weight")->capture_default_str();
  sub->add_option("--lambda-grid", f.lambda_grid, "comma-separated lambda values for tune-lambda")
      ->capture_default_str();
  sub->add_option("--m", f.m, "reviews per profile (must match the dataset)");
  sub->add_option("--l", f.l, "words per review (must match the dataset)");
  sub->add_option("--variant", f.variant, "full, sa, fn, in, w2v or sp")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for initialization, shuffling and dropout")->capture_default_str();
  sub->add_option("--max-epochs", c.max_epochs)->capture_default_str();
  sub->add_option("--patience", c.patience, "epochs without validation improvement before stopping")
      ->capture_default_str();
  sub->add_option("--clip-norm", f.clip_norm, "global gradient-norm clip, 0 disables")->capture_default_str();
  sub->add_option("--backend", f.backend, "word vectors: trainable, static or contextual")->capture_default_str();
  sub->add_option("--word-vectors", f.word_vectors, "GloVe-format text file (static backend and w2v)");
  sub->add_option("--store-index", f.store_index, "contextual store index (JSONL)");
  sub->add_option("--store-matrix", f.store_matrix, "contextual store matrix (SIFNEMB1)");
}

int report(std::ostream& err, const char* kind, const std::exception& e, int code) {
  err << "error (" << kind << "): " << e.what() << '\n';
  return code;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Review-based rating prediction with sentiment-aware attention", "sifn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("sifn ") + "0.1.0");

  PreprocessOptions pre;
  auto* s_pre = subcommand(app, "preprocess", "parse raw reviews, filter, split and build profiles");
  s_pre->add_option("--input", pre.input, "raw reviews, one JSON object per line")->required();
  s_pre->add_option("--out", pre.out, "dataset directory")->required();
  s_pre->add_option("--min-reviews", pre.config.min_reviews, "k-core threshold")->capture_default_str();
  s_pre->add_option("--m", pre.config.m, "reviews per profile")->capture_default_str();
  s_pre->add_option("--l", pre.config.l, "words per review")->capture_default_str();
  s_pre->add_option("--min-freq", pre.config.min_freq, "vocabulary frequency floor")->capture_default_str();
  s_pre->add_option("--seed", pre.config.seed, "split seed")->capture_default_str();

  SynthOptions syn;
  auto* s_syn = subcommand(app, "synth", "generate a planted-signal review set");
  s_syn->add_option("--out", syn.out, "output directory")->required();
  s_syn->add_option("--users", syn.config.users)->capture_default_str();
  s_syn->add_option("--items", syn.config.items)->capture_default_str();
  s_syn->add_option("--density", syn.config.density, "probability that a pair is rated")->capture_default_str();
  s_syn->add_option("--latent-dim", syn.config.latent_dim)->capture_default_str();
  s_syn->add_option("--noise", syn.config.noise, "rating noise sigma")->capture_default_str();
  s_syn->add_option("--vocab-size", syn.config.vocab_size, "filler vocabulary size")->capture_default_str();
  s_syn->add_option("--review-length", syn.config.review_length)->capture_default_str();
  s_syn->add_option("--sentiment-words", syn.config.sentiment_words, "sentiment words per review")
      ->capture_default_str();
  s_syn->add_flag("--sentiment-signal,!--no-sentiment-signal", syn.config.sentiment_signal,
                  "tie sentiment words to the rating")
      ->capture_default_str();
  s_syn->add_option("--vector-dim", syn.vector_dim, "width of vectors.txt")->capture_default_str();
  s_syn->add_option("--seed", syn.config.seed)->capture_default_str();

  TrainOptions tr;
  auto* s_tr = subcommand(app, "train", "train one model with early stopping");
  s_tr->add_option("--data", tr.data, "dataset directory")->required();
  s_tr->add_option("--out", tr.out, "run directory")->required();
  add_training_flags(s_tr, tr.flags);
  s_tr->add_flag("--timings", tr.timings, "record wall-clock seconds per epoch in history.jsonl");

  EvaluateOptions ev;
  auto* s_ev = subcommand(app, "evaluate", "score a checkpoint and update results.json");
  s_ev->add_option("--data", ev.data, "dataset directory")->required();
  s_ev->add_option("--checkpoint", ev.checkpoint)->required();
  s_ev->add_option("--out", ev.out, "directory holding results.json")->required();
  s_ev->add_option("--split", ev.split, "train, validation or test")->capture_default_str();
  s_ev->add_option("--dataset-name", ev.dataset_name, "column name in results.json");

  AblateOptions ab;
  auto* s_ab = subcommand(app, "ablate", "train and test every variant over several seeds");
  s_ab->add_option("--data", ab.data, "dataset directory")->required();
  s_ab->add_option("--out", ab.out, "output directory")->required();
  s_ab->add_option("--seeds", ab.seeds, "comma-separated seeds")->capture_default_str();
  s_ab->add_option("--dataset-name", ab.dataset_name, "column name in results.json");
  add_training_flags(s_ab, ab.flags);

  TuneOptions tl;
  auto* s_tl = subcommand(app, "tune-lambda", "pick lambda from a grid by validation MSE");
  s_tl->add_option("--data", tl.data, "dataset directory")->required();
  s_tl->add_option("--out", tl.out, "output directory")->required();
  add_training_flags(s_tl, tl.flags);

  VisualizeOptions vz;
  auto* s_vz = subcommand(app, "visualize", "export word and review attention as JSON and HTML");
  s_vz->add_option("--data", vz.data, "dataset directory")->required();
  s_vz->add_option("--checkpoint", vz.checkpoint)->required();
  s_vz->add_option("--out", vz.out, "output directory (reports go to <out>/attention)")->required();
  s_vz->add_option("--pair", vz.pairs, "user:item, repeatable")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  s_vz->add_option("--limit", vz.limit, "pairs taken from --split when no --pair is given")->capture_default_str();
  s_vz->add_option("--split", vz.split)->capture_default_str();

  GradcheckOptions gc;
  auto* s_gc = subcommand(app, "gradcheck", "finite-difference check of every parameter gradient");
  s_gc->add_option("--k", gc.instance.k)->capture_default_str();
  s_gc->add_option("--m", gc.instance.m)->capture_default_str();
  s_gc->add_option("--l", gc.instance.l)->capture_default_str();
  s_gc->add_option("--batch", gc.instance.batch)->capture_default_str();
  s_gc->add_option("--lambda", gc.instance.lambda)->capture_default_str();
  s_gc->add_option("--seed", gc.instance.seed)->capture_default_str();
  s_gc->add_option("--variant", gc.variant)->capture_default_str();
  s_gc->add_option("--tolerance", gc.tolerance, "max relative error")->capture_default_str();
  s_gc->add_option("--eps", gc.eps, "finite-difference step")->capture_default_str();

  std::vector<std::string> argv;
  try {
    argv = expand_config(args);
  } catch (const ConfigError& e) {
    return report(err, "usage", e, kUsage);
  }
  std::reverse(argv.begin(), argv.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  try {
    if (s_pre->parsed()) return run_preprocess(pre, out, err);
    if (s_syn->parsed()) return run_synth(syn, out, err);
    if (s_tr->parsed()) return run_train(tr, out, err);
    if (s_ev->parsed()) return run_evaluate(ev, out, err);
    if (s_ab->parsed()) return run_ablate(ab, out, err);
    if (s_tl->parsed()) return run_tune_lambda(tl, out, err);
    if (s_vz->parsed()) return run_visualize(vz, out, err);
    if (s_gc->parsed()) return run_gradcheck(gc, out, err);
  } catch (const ConfigError& e) {
    return report(err, "usage", e, kUsage);
  } catch (const NumericError& e) {
    return report(err, "numeric", e, kNumericError);
  } catch (const std::exception& e) {
    return report(err, "data", e, kDataError);
  }
  return kUsage;
}

}  // namespace sifn::cli
