// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sifn::ag {

using Shape = std::vector<std::size_t>;

std::size_t numel(const Shape& shape);
std::string to_string(const Shape& shape);

namespace detail {

// One vertex of the differentiation graph. A node is created by every
// primitive; leaves (parameters, constants) have no inputs.
struct Node {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;  // empty until first accumulation
  bool requires_grad = false;
  const char* op = "leaf";
  std::vector<std::shared_ptr<Node>> inputs;
  // Reads self.grad and accumulates into the inputs' grads.
  std::function<void(Node& self)> backward;

  void ensure_grad() {
    if (grad.empty()) grad.assign(data.size(), 0.0);
  }
};

}  // namespace detail

/// Dense row-major float64 tensor participating in a reverse-mode graph.
///
/// A Tensor is a shared handle: copies alias the same storage and the same
/// gradient. Data of non-leaf tensors is immutable once produced; leaves
/// (parameters) may be updated in place by optimizers and gradient checks.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<double> data, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const { return static_cast<bool>(node_); }

  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t numel() const;

  std::span<const double> data() const;
  /// Mutable view of a leaf's storage. Throws for non-leaf tensors.
  std::span<double> mutable_data();
  double item() const;
  double operator[](std::size_t flat_index) const { return data()[flat_index]; }

  bool requires_grad() const;
  void set_requires_grad(bool value);
  bool is_leaf() const;
  const char* op_name() const;

  bool has_grad() const;
  /// Gradient storage; empty span when no gradient has been accumulated.
  std::span<const double> grad() const;
  std::span<double> mutable_grad();
  void zero_grad();

  /// Reverse sweep from this scalar. Leaf gradients accumulate across
  /// calls; intermediate gradients are reset at the start of every sweep.
  void backward() const;

  /// Copy of the values, cut from the graph.
  Tensor detach() const;

  // Internal: used by primitives and the graph walker.
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}
  const std::shared_ptr<detail::Node>& node() const { return node_; }

 private:
  detail::Node& checked() const;

  std::shared_ptr<detail::Node> node_;
};

/// Nodes reachable from `root` that require grad, inputs before outputs.
std::vector<detail::Node*> topological_order(const Tensor& root);

}  // namespace sifn::ag
