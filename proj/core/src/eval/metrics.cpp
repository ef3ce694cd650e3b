// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "sifn/common/errors.hpp"

namespace sifn::eval {

double mse(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.empty()) throw DataError("MSE of an empty set");
  if (predictions.size() != targets.size()) {
    throw ShapeError("MSE over " + std::to_string(predictions.size()) + " predictions and " +
                     std::to_string(targets.size()) + " targets");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - targets[i];
    sum += d * d;
  }
  return sum / static_cast<double>(predictions.size());
}

std::size_t argmax(std::span<const double> row) {
  if (row.empty()) throw ShapeError("argmax of an empty row");
  return static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

double sentiment_accuracy(std::span<const double> scores, std::size_t classes,
                          std::span<const corpus::SentimentLabel> labels, std::span<const std::uint8_t> keep) {
  if (classes == 0 || scores.size() != labels.size() * classes) {
    throw ShapeError("sentiment scores do not match " + std::to_string(labels.size()) + " labels");
  }
  if (!keep.empty() && keep.size() != labels.size()) throw ShapeError("sentiment mask does not match labels");
  std::size_t counted = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!keep.empty() && !keep[i]) continue;
    ++counted;
    if (argmax(scores.subspan(i * classes, classes)) == static_cast<std::size_t>(labels[i])) ++correct;
  }
  if (counted == 0) throw DataError("sentiment accuracy of an empty set");
  return static_cast<double>(correct) / static_cast<double>(counted);
}

double relative_improvement(double baseline_mse, double our_mse) {
  if (!(baseline_mse > 0.0)) throw DomainError("relative improvement needs a positive baseline");
  return (baseline_mse - our_mse) / baseline_mse * 100.0;
}

std::string format_significant(double value, int digits) {
  if (digits < 1) throw ConfigError("need at least one significant digit");
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  auto render = [](double v, int decimals) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(decimals) << v;
    return out.str();
  };
  if (value == 0.0) return render(0.0, digits - 1);
  auto decimals_for = [&](double v) {
    return std::max(0, digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(v)))));
  };
  int decimals = decimals_for(value);
  std::string out = render(value, decimals);
  // Rounding can carry into a new leading digit (9.996 -> 10.00).
  const int again = decimals_for(std::stod(out));
  if (again < decimals) out = render(value, again);
  return out;
}

std::string render_percent(double percent) {
  std::string body = format_significant(percent, 3);
  if (percent > 0.0) body = "+" + body;
  return body + "%";
}

double median(std::vector<double> values) {
  if (values.empty()) throw DataError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace sifn::eval
