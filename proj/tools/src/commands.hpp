// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "sifn/corpus/dataset.hpp"
#include "sifn/corpus/synth.hpp"
#include "sifn/model/grad_instance.hpp"
#include "sifn/train/trainer.hpp"

namespace sifn::cli {

struct TrainingFlags {
  train::TrainConfig config;
  std::string variant = "full";
  std::string backend = "trainable";
  std::string word_vectors;
  std::string store_index;
  std::string store_matrix;
  std::string lambda_grid = "0.1,1,10";
  double clip_norm = 5.0;  // 0 disables clipping
  // When nonzero, must match the dataset's profile shape.
  std::size_t m = 0;
  std::size_t l = 0;
};

struct PreprocessOptions {
  std::string input;
  std::string out;
  corpus::PreprocessConfig config;
};

struct SynthOptions {
  std::string out;
  corpus::SynthConfig config;
  std::size_t vector_dim = 16;
};

struct TrainOptions {
  std::string data;
  std::string out;
  TrainingFlags flags;
  bool timings = false;
};

struct EvaluateOptions {
  std::string data;
  std::string checkpoint;
  std::string out;
  std::string split = "test";
  std::string dataset_name;  // defaults to the data directory's name
};

struct AblateOptions {
  std::string data;
  std::string out;
  std::string seeds = "1,2,3,4,5";
  std::string dataset_name;
  TrainingFlags flags;
};

struct TuneOptions {
  std::string data;
  std::string out;
  TrainingFlags flags;
};

struct VisualizeOptions {
  std::string data;
  std::string checkpoint;
  std::string out;
  std::vector<std::string> pairs;  // "user:item"
  std::size_t limit = 5;
  std::string split = "test";
};

struct GradcheckOptions {
  model::GradInstanceConfig instance;
  std::string variant = "full";
  double tolerance = 1e-4;
  double eps = 1e-5;
  double abs_floor = 1e-6;
};

int run_preprocess(const PreprocessOptions& o, std::ostream& out, std::ostream& err);
int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err);
int run_train(const TrainOptions& o, std::ostream& out, std::ostream& err);
int run_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err);
int run_ablate(const AblateOptions& o, std::ostream& out, std::ostream& err);
int run_tune_lambda(const TuneOptions& o, std::ostream& out, std::ostream& err);
int run_visualize(const VisualizeOptions& o, std::ostream& out, std::ostream& err);
int run_gradcheck(const GradcheckOptions& o, std::ostream& out, std::ostream& err);

}  // namespace sifn::cli
