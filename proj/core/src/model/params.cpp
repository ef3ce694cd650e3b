// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/model/params.hpp"

#include <algorithm>

#include "sifn/common/errors.hpp"

namespace sifn::model {

ag::Tensor& ParameterSet::add(std::string name, ag::Tensor tensor, std::optional<std::size_t> frozen_row) {
  if (contains(name)) throw ConfigError("duplicate parameter '" + name + "'");
  tensor.set_requires_grad(true);
  entries_.push_back(Parameter{std::move(name), std::move(tensor), frozen_row});
  return entries_.back().tensor;
}

bool ParameterSet::contains(std::string_view name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& p) { return p.name == name; });
}

const ag::Tensor& ParameterSet::get(std::string_view name) const {
  for (const auto& p : entries_) {
    if (p.name == name) return p.tensor;
  }
  throw ConfigError("no parameter named '" + std::string(name) + "'");
}

ag::Tensor& ParameterSet::get(std::string_view name) {
  return const_cast<ag::Tensor&>(std::as_const(*this).get(name));
}

std::vector<std::string> ParameterSet::names() const {
  std::vector<std::string> out;
  for (const auto& p : entries_) out.push_back(p.name);
  return out;
}

std::vector<ag::NamedTensor> ParameterSet::named_tensors() const {
  std::vector<ag::NamedTensor> out;
  for (const auto& p : entries_) out.push_back({p.name, p.tensor});
  return out;
}

std::size_t ParameterSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : entries_) n += p.tensor.numel();
  return n;
}

void ParameterSet::zero_grad() {
  for (auto& p : entries_) p.tensor.zero_grad();
}

ParameterSet ParameterSet::clone() const {
  ParameterSet out;
  for (const auto& p : entries_) out.add(p.name, p.tensor.detach(), p.frozen_row);
  return out;
}

void ParameterSet::assign_values(const ParameterSet& other) {
  for (auto& p : entries_) {
    const auto& src = other.get(p.name);
    if (src.shape() != p.tensor.shape()) {
      throw ShapeError("parameter '" + p.name + "' has shape " + ag::to_string(p.tensor.shape()) + ", source has " +
                       ag::to_string(src.shape()));
    }
    std::copy(src.data().begin(), src.data().end(), p.tensor.mutable_data().begin());
  }
}

}  // namespace sifn::model
