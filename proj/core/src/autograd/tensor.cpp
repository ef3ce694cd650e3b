// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/autograd/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "sifn/common/errors.hpp"

namespace sifn::ag {

std::size_t numel(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::string to_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) out += "x";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

namespace {

void validate_shape(const Shape& shape) {
  if (shape.empty()) {
    throw ShapeError("tensor shape must have at least one dimension");
  }
  if (std::any_of(shape.begin(), shape.end(), [](std::size_t d) { return d == 0; })) {
    throw ShapeError("tensor dimensions must be positive, got " + to_string(shape));
  }
}

}  // namespace

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return full(std::move(shape), 0.0, requires_grad); }

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  validate_shape(shape);
  auto n = ag::numel(shape);
  return from(std::move(shape), std::vector<double>(n, value), requires_grad);
}

Tensor Tensor::from(Shape shape, std::vector<double> data, bool requires_grad) {
  validate_shape(shape);
  if (ag::numel(shape) != data.size()) {
    throw ShapeError("shape " + to_string(shape) + " holds " + std::to_string(ag::numel(shape)) +
                     " values, got " + std::to_string(data.size()));
  }
  auto node = std::make_shared<detail::Node>();
  node->shape = std::move(shape);
  node->data = std::move(data);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double value, bool requires_grad) { return from({1}, {value}, requires_grad); }

detail::Node& Tensor::checked() const {
  if (!node_) throw Error("use of an undefined tensor");
  return *node_;
}

const Shape& Tensor::shape() const { return checked().shape; }

std::size_t Tensor::dim(std::size_t axis) const {
  const auto& s = shape();
  if (axis >= s.size()) {
    throw ShapeError("axis " + std::to_string(axis) + " out of range for " + to_string(s));
  }
  return s[axis];
}

std::size_t Tensor::numel() const { return checked().data.size(); }

std::span<const double> Tensor::data() const { return checked().data; }

std::span<double> Tensor::mutable_data() {
  auto& n = checked();
  if (!n.inputs.empty()) {
    throw Error(std::string("cannot mutate the output of '") + n.op + "'");
  }
  return n.data;
}

double Tensor::item() const {
  const auto& n = checked();
  if (n.data.size() != 1) {
    throw ShapeError("item() on a tensor of shape " + to_string(n.shape));
  }
  return n.data[0];
}

bool Tensor::requires_grad() const { return checked().requires_grad; }

void Tensor::set_requires_grad(bool value) {
  auto& n = checked();
  if (!n.inputs.empty()) throw Error("requires_grad can only be set on leaves");
  n.requires_grad = value;
}

bool Tensor::is_leaf() const { return checked().inputs.empty(); }
const char* Tensor::op_name() const { return checked().op; }
bool Tensor::has_grad() const { return !checked().grad.empty(); }
std::span<const double> Tensor::grad() const { return checked().grad; }

std::span<double> Tensor::mutable_grad() {
  auto& n = checked();
  n.ensure_grad();
  return n.grad;
}

void Tensor::zero_grad() {
  auto& n = checked();
  std::fill(n.grad.begin(), n.grad.end(), 0.0);
}

Tensor Tensor::detach() const {
  const auto& n = checked();
  return from(n.shape, n.data, false);
}

std::vector<detail::Node*> topological_order(const Tensor& root) {
  std::vector<detail::Node*> order;
  if (!root.defined() || !root.requires_grad()) return order;
  std::unordered_set<detail::Node*> visited;
  // Iterative post-order DFS: (node, next input to visit).
  std::vector<std::pair<detail::Node*, std::size_t>> stack;
  stack.emplace_back(root.node().get(), 0);
  visited.insert(root.node().get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      detail::Node* child = node->inputs[next++].get();
      if (child->requires_grad && visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
      continue;
    }
    order.push_back(node);
    stack.pop_back();
  }
  return order;
}

void Tensor::backward() const {
  const auto& root = checked();
  if (root.data.size() != 1) {
    throw ShapeError("backward() requires a scalar loss, got shape " + to_string(root.shape));
  }
  if (!root.requires_grad) {
    throw Error("backward() on a tensor that does not require grad");
  }
  auto order = topological_order(*this);
  for (auto* node : order) {
    if (!node->inputs.empty()) node->grad.assign(node->data.size(), 0.0);
  }
  node_->ensure_grad();
  node_->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    detail::Node* node = *it;
    if (node->backward) node->backward(*node);
  }
}

}  // namespace sifn::ag
