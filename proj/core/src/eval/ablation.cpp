// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/eval/ablation.hpp"

#include <algorithm>

#include <json.hpp>

#include "sifn/common/errors.hpp"
#include "sifn/common/parallel.hpp"
#include "sifn/eval/evaluate.hpp"
#include "sifn/eval/metrics.hpp"

namespace sifn::eval {

const AblationRow& AblationReport::row(model::Variant v) const {
  for (const auto& r : rows) {
    if (r.variant == v) return r;
  }
  throw ConfigError("ablation report has no row for " + model::display_name(v));
}

AblationReport run_ablation(const AblationConfig& config, const corpus::Dataset& dataset,
                            const embeddings::StoreSpec& store, std::string dataset_name) {
  if (config.seeds.empty()) throw ConfigError("ablation needs at least one seed");
  if (config.variants.empty()) throw ConfigError("ablation needs at least one variant");
  const auto has_full = std::find(config.variants.begin(), config.variants.end(), model::Variant::kFull);
  if (has_full == config.variants.end()) throw ConfigError("ablation needs the full model as reference");

  const std::size_t nv = config.variants.size();
  const std::size_t ns = config.seeds.size();
  std::vector<double> mse(nv * ns, 0.0);
  parallel_for(nv * ns, [&](std::size_t task) {
    auto cfg = config.base;
    cfg.variant = config.variants[task / ns];
    cfg.seed = config.seeds[task % ns];
    const auto run = train::train(cfg, dataset, store);
    if (run.aborted) {
      throw NumericError(model::display_name(cfg.variant) + " seed " + std::to_string(cfg.seed) + ": " +
                         *run.aborted);
    }
    const auto fitted = train::instantiate(run.best, dataset);
    mse[task] = evaluate(fitted, dataset, corpus::SplitTag::kTest).mse;
  });

  AblationReport report;
  report.dataset = std::move(dataset_name);
  report.seeds = config.seeds;
  for (std::size_t v = 0; v < nv; ++v) {
    AblationRow row;
    row.variant = config.variants[v];
    row.test_mse.assign(mse.begin() + static_cast<std::ptrdiff_t>(v * ns),
                        mse.begin() + static_cast<std::ptrdiff_t>((v + 1) * ns));
    row.median_mse = median(row.test_mse);
    report.rows.push_back(std::move(row));
  }
  const double full = report.row(model::Variant::kFull).median_mse;
  for (auto& row : report.rows) row.increment = row.median_mse - full;
  return report;
}

std::string ablation_json(const AblationReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kAblationSchemaVersion;
  j["dataset"] = report.dataset;
  j["seeds"] = report.seeds;
  j["variants"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json v;
    v["name"] = model::display_name(r.variant);
    v["test_mse"] = r.test_mse;
    v["median_mse"] = r.median_mse;
    v["increment"] = r.increment;
    j["variants"].push_back(v);
  }
  return j.dump(2) + "\n";
}

}  // namespace sifn::eval
