// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sifn/autograd/grad_check.hpp"
#include "sifn/autograd/tensor.hpp"

namespace sifn::model {

struct Parameter {
  std::string name;
  ag::Tensor tensor;
  /// Row that is never updated (the PAD row of a word table).
  std::optional<std::size_t> frozen_row;
};

/// Learnable tensors keyed by role, in registration order.
class ParameterSet {
 public:
  ag::Tensor& add(std::string name, ag::Tensor tensor, std::optional<std::size_t> frozen_row = std::nullopt);

  bool contains(std::string_view name) const;
  /// Throws ConfigError for unknown names.
  const ag::Tensor& get(std::string_view name) const;
  ag::Tensor& get(std::string_view name);

  std::vector<Parameter>& entries() { return entries_; }
  const std::vector<Parameter>& entries() const { return entries_; }
  std::vector<std::string> names() const;
  std::vector<ag::NamedTensor> named_tensors() const;

  std::size_t scalar_count() const;
  void zero_grad();
  /// Deep copy: fresh leaves with the same values.
  ParameterSet clone() const;
  /// Copies values from a set with identical names and shapes.
  void assign_values(const ParameterSet& other);

 private:
  std::vector<Parameter> entries_;
};

}  // namespace sifn::model
