// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include "sifn/autograd/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sifn/common/errors.hpp"

namespace sifn::ag {

using detail::Node;
using NodePtr = std::shared_ptr<Node>;

Mask Mask::all(Shape shape) {
  auto n = ag::numel(shape);
  return Mask{std::move(shape), std::vector<std::uint8_t>(n, 1)};
}

Mask Mask::from(Shape shape, std::vector<std::uint8_t> keep) {
  if (ag::numel(shape) != keep.size()) {
    throw ShapeError("mask shape " + to_string(shape) + " does not match " +
                     std::to_string(keep.size()) + " entries");
  }
  return Mask{std::move(shape), std::move(keep)};
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count_if(keep.begin(), keep.end(), [](auto k) { return k != 0; }));
}

namespace {

Tensor make_result(const char* op, Shape shape, std::vector<double> data, std::vector<NodePtr> inputs,
                   std::function<void(Node&)> backward) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->shape = std::move(shape);
  node->data = std::move(data);
  const bool needs = std::any_of(inputs.begin(), inputs.end(), [](const NodePtr& n) { return n->requires_grad; });
  if (needs) {
    node->requires_grad = true;
    node->inputs = std::move(inputs);
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

// Returns the input's gradient buffer, or nullptr when it takes no gradient.
double* grad_of(Node& n) {
  if (!n.requires_grad) return nullptr;
  n.ensure_grad();
  return n.grad.data();
}

enum class Broadcast { kSame, kRowVector };

Broadcast check_binary(const char* op, const Tensor& a, const Tensor& b) {
  if (a.shape() == b.shape()) return Broadcast::kSame;
  if (b.rank() == 1 && b.dim(0) == a.shape().back()) return Broadcast::kRowVector;
  throw ShapeError(std::string(op) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                   to_string(b.shape()));
}

template <typename Fwd, typename DA, typename DB>
Tensor binary(const char* op, const Tensor& a, const Tensor& b, Fwd fwd, DA da, DB db) {
  const auto mode = check_binary(op, a, b);
  const auto av = a.data();
  const auto bv = b.data();
  const std::size_t n = av.size();
  const std::size_t width = bv.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = fwd(av[i], bv[mode == Broadcast::kSame ? i : i % width]);
  }
  return make_result(op, a.shape(), std::move(out), {a.node(), b.node()},
                     [mode, da, db](Node& self) {
                       Node& na = *self.inputs[0];
                       Node& nb = *self.inputs[1];
                       double* ga = grad_of(na);
                       double* gb = grad_of(nb);
                       const std::size_t w = nb.data.size();
                       for (std::size_t i = 0; i < self.data.size(); ++i) {
                         const std::size_t j = mode == Broadcast::kSame ? i : i % w;
                         const double g = self.grad[i];
                         if (ga) ga[i] += da(g, na.data[i], nb.data[j]);
                         if (gb) gb[j] += db(g, na.data[i], nb.data[j]);
                       }
                     });
}

template <typename Fwd, typename Deriv>
Tensor unary(const char* op, const Tensor& x, Fwd fwd, Deriv deriv) {
  const auto xv = x.data();
  std::vector<double> out(xv.size());
  std::transform(xv.begin(), xv.end(), out.begin(), fwd);
  // deriv(input, output) -> d output / d input
  return make_result(op, x.shape(), std::move(out), {x.node()}, [deriv](Node& self) {
    Node& in = *self.inputs[0];
    double* g = grad_of(in);
    if (!g) return;
    for (std::size_t i = 0; i < self.data.size(); ++i) {
      g[i] += self.grad[i] * deriv(in.data[i], self.data[i]);
    }
  });
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  return binary(
      "add", a, b, [](double x, double y) { return x + y; }, [](double g, double, double) { return g; },
      [](double g, double, double) { return g; });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  return binary(
      "sub", a, b, [](double x, double y) { return x - y; }, [](double g, double, double) { return g; },
      [](double g, double, double) { return -g; });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  return binary(
      "mul", a, b, [](double x, double y) { return x * y; },
      [](double g, double, double y) { return g * y; }, [](double g, double x, double) { return g * x; });
}

Tensor tanh(const Tensor& x) {
  return unary(
      "tanh", x, [](double v) { return std::tanh(v); }, [](double, double y) { return 1.0 - y * y; });
}

Tensor exp(const Tensor& x) {
  return unary(
      "exp", x, [](double v) { return std::exp(v); }, [](double, double y) { return y; });
}

Tensor log(const Tensor& x) {
  for (double v : x.data()) {
    if (!(v > 0.0)) {
      throw DomainError("log of non-positive value " + std::to_string(v));
    }
  }
  return unary(
      "log", x, [](double v) { return std::log(v); }, [](double v, double) { return 1.0 / v; });
}

Tensor clamp_min(const Tensor& x, double floor) {
  return unary(
      "clamp_min", x, [floor](double v) { return std::max(v, floor); },
      [floor](double v, double) { return v > floor ? 1.0 : 0.0; });
}

Tensor scale(const Tensor& x, double factor) {
  return unary(
      "scale", x, [factor](double v) { return v * factor; }, [factor](double, double) { return factor; });
}

Tensor elementwise(ElementwiseKind kind, const Tensor& a, const Tensor* b) {
  const bool binary_kind =
      kind == ElementwiseKind::kAdd || kind == ElementwiseKind::kSub || kind == ElementwiseKind::kMul;
  if (binary_kind && b == nullptr) throw ShapeError("binary elementwise op requires a second operand");
  if (!binary_kind && b != nullptr) throw ShapeError("unary elementwise op takes one operand");
  switch (kind) {
    case ElementwiseKind::kAdd:
      return add(a, *b);
    case ElementwiseKind::kSub:
      return sub(a, *b);
    case ElementwiseKind::kMul:
      return mul(a, *b);
    case ElementwiseKind::kTanh:
      return tanh(a);
    case ElementwiseKind::kExp:
      return exp(a);
    case ElementwiseKind::kLog:
      return log(a);
  }
  throw Error("unknown elementwise kind");
}

Tensor matmul(const Tensor& a, const Tensor& b, Transpose transpose) {
  if (a.rank() != 2 || b.rank() != 2) {
    throw ShapeError("matmul expects rank-2 operands, got " + to_string(a.shape()) + " and " +
                     to_string(b.shape()));
  }
  const bool tb = transpose == Transpose::kB;
  const std::size_t p = a.dim(0);
  const std::size_t q = a.dim(1);
  const std::size_t bq = tb ? b.dim(1) : b.dim(0);
  const std::size_t r = tb ? b.dim(0) : b.dim(1);
  if (q != bq) {
    throw ShapeError("matmul: inner dimensions disagree, " + to_string(a.shape()) + (tb ? " x T" : " x ") +
                     to_string(b.shape()));
  }
  const auto av = a.data();
  const auto bv = b.data();
  std::vector<double> out(p * r, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    double* row = out.data() + i * r;
    for (std::size_t k = 0; k < q; ++k) {
      const double aik = av[i * q + k];
      if (tb) {
        for (std::size_t j = 0; j < r; ++j) row[j] += aik * bv[j * q + k];
      } else {
        const double* brow = bv.data() + k * r;
        for (std::size_t j = 0; j < r; ++j) row[j] += aik * brow[j];
      }
    }
  }
  return make_result("matmul", {p, r}, std::move(out), {a.node(), b.node()}, [p, q, r, tb](Node& self) {
    Node& na = *self.inputs[0];
    Node& nb = *self.inputs[1];
    const double* g = self.grad.data();
    if (double* ga = grad_of(na)) {
      // dA = dC * B^T   (or dC * B when B was transposed)
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
          const double gij = g[i * r + j];
          if (gij == 0.0) continue;
          for (std::size_t k = 0; k < q; ++k) {
            ga[i * q + k] += gij * (tb ? nb.data[j * q + k] : nb.data[k * r + j]);
          }
        }
      }
    }
    if (double* gb = grad_of(nb)) {
      // dB = A^T * dC   (or dC^T * A when B was transposed)
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t k = 0; k < q; ++k) {
          const double aik = na.data[i * q + k];
          if (aik == 0.0) continue;
          for (std::size_t j = 0; j < r; ++j) {
            gb[tb ? j * q + k : k * r + j] += aik * g[i * r + j];
          }
        }
      }
    }
  });
}

Tensor softmax_lastdim(const Tensor& x, const Mask* mask, EmptyRows empty_rows) {
  if (mask && mask->shape != x.shape()) {
    throw ShapeError("softmax mask shape " + to_string(mask->shape) + " does not match input " +
                     to_string(x.shape()));
  }
  const std::size_t width = x.shape().back();
  const std::size_t rows = x.numel() / width;
  const auto xv = x.data();
  auto keep = [mask](std::size_t i) { return mask == nullptr || mask->keep[i] != 0; };
  std::vector<double> out(x.numel(), 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t base = r * width;
    double mx = -std::numeric_limits<double>::infinity();
    std::size_t kept = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (!keep(base + j)) continue;
      if (!std::isfinite(xv[base + j])) {
        throw NumericError("non-finite softmax input in row " + std::to_string(r));
      }
      mx = std::max(mx, xv[base + j]);
      ++kept;
    }
    if (kept == 0) {
      if (empty_rows == EmptyRows::kZero) continue;
      throw DomainError("softmax row " + std::to_string(r) +
                        " is fully masked (empty review or profile reached the model)");
    }
    double z = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
      if (keep(base + j)) {
        out[base + j] = std::exp(xv[base + j] - mx);
        z += out[base + j];
      }
    }
    for (std::size_t j = 0; j < width; ++j) out[base + j] /= z;
  }
  return make_result("softmax", x.shape(), std::move(out), {x.node()}, [rows, width](Node& self) {
    double* gx = grad_of(*self.inputs[0]);
    if (!gx) return;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t base = r * width;
      double dot = 0.0;
      for (std::size_t j = 0; j < width; ++j) dot += self.grad[base + j] * self.data[base + j];
      for (std::size_t j = 0; j < width; ++j) {
        // Masked outputs are exactly zero, so their gradient is exactly zero.
        gx[base + j] += self.data[base + j] * (self.grad[base + j] - dot);
      }
    }
  });
}

Tensor reduce(ReduceKind kind, const Tensor& x, std::size_t axis, const Tensor* weights) {
  const auto& shape = x.shape();
  if (axis >= shape.size()) {
    throw ShapeError("invalid reduction axis " + std::to_string(axis) + " for " + to_string(shape));
  }
  std::size_t outer = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
  const std::size_t n = shape[axis];
  std::size_t inner = 1;
  for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];

  Shape out_shape;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i != axis) out_shape.push_back(shape[i]);
  }
  if (out_shape.empty()) out_shape = {1};

  if (kind == ReduceKind::kWeightedSum) {
    if (weights == nullptr) throw ShapeError("weighted_sum requires weights");
    const Shape expected(shape.begin(), shape.begin() + static_cast<std::ptrdiff_t>(axis) + 1);
    if (weights->shape() != expected) {
      throw ShapeError("weighted_sum weights must have shape " + to_string(expected) + ", got " +
                       to_string(weights->shape()));
    }
  }

  const auto xv = x.data();
  std::vector<double> out(outer * inner, 0.0);
  const double mean_scale = kind == ReduceKind::kMean ? 1.0 / static_cast<double>(n) : 1.0;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = kind == ReduceKind::kWeightedSum ? weights->data()[o * n + j] : mean_scale;
      const double* src = xv.data() + (o * n + j) * inner;
      double* dst = out.data() + o * inner;
      for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
    }
  }

  std::vector<NodePtr> inputs{x.node()};
  if (kind == ReduceKind::kWeightedSum) inputs.push_back(weights->node());
  const char* op = kind == ReduceKind::kSum ? "sum" : kind == ReduceKind::kMean ? "mean" : "weighted_sum";
  return make_result(op, std::move(out_shape), std::move(out), std::move(inputs),
                     [kind, outer, n, inner, mean_scale](Node& self) {
                       Node& nx = *self.inputs[0];
                       const Node* nw = kind == ReduceKind::kWeightedSum ? self.inputs[1].get() : nullptr;
                       double* gx = grad_of(nx);
                       double* gw = nw ? grad_of(*self.inputs[1]) : nullptr;
                       for (std::size_t o = 0; o < outer; ++o) {
                         const double* g = self.grad.data() + o * inner;
                         for (std::size_t j = 0; j < n; ++j) {
                           const std::size_t base = (o * n + j) * inner;
                           const double w = nw ? nw->data[o * n + j] : mean_scale;
                           if (gx) {
                             for (std::size_t i = 0; i < inner; ++i) gx[base + i] += w * g[i];
                           }
                           if (gw) {
                             double acc = 0.0;
                             for (std::size_t i = 0; i < inner; ++i) acc += nx.data[base + i] * g[i];
                             gw[o * n + j] += acc;
                           }
                         }
                       }
                     });
}

Tensor sum(const Tensor& x, std::size_t axis) { return reduce(ReduceKind::kSum, x, axis); }
Tensor mean(const Tensor& x, std::size_t axis) { return reduce(ReduceKind::kMean, x, axis); }
Tensor weighted_sum(const Tensor& x, const Tensor& weights, std::size_t axis) {
  return reduce(ReduceKind::kWeightedSum, x, axis, &weights);
}

Tensor sum_all(const Tensor& x) { return reduce(ReduceKind::kSum, reshape(x, {x.numel()}), 0); }
Tensor mean_all(const Tensor& x) { return reduce(ReduceKind::kMean, reshape(x, {x.numel()}), 0); }

Tensor reshape(const Tensor& x, Shape shape) {
  if (ag::numel(shape) != x.numel()) {
    throw ShapeError("cannot reshape " + to_string(x.shape()) + " to " + to_string(shape));
  }
  if (shape.empty() || std::any_of(shape.begin(), shape.end(), [](auto d) { return d == 0; })) {
    throw ShapeError("invalid reshape target " + to_string(shape));
  }
  std::vector<double> out(x.data().begin(), x.data().end());
  return make_result("reshape", std::move(shape), std::move(out), {x.node()}, [](Node& self) {
    double* g = grad_of(*self.inputs[0]);
    if (!g) return;
    for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
  });
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(0) != b.dim(0)) {
    throw ShapeError("concat_cols: incompatible shapes " + to_string(a.shape()) + " and " +
                     to_string(b.shape()));
  }
  const std::size_t rows = a.dim(0);
  const std::size_t ca = a.dim(1);
  const std::size_t cb = b.dim(1);
  std::vector<double> out(rows * (ca + cb));
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(a.data().data() + r * ca, ca, out.data() + r * (ca + cb));
    std::copy_n(b.data().data() + r * cb, cb, out.data() + r * (ca + cb) + ca);
  }
  return make_result("concat", {rows, ca + cb}, std::move(out), {a.node(), b.node()},
                     [rows, ca, cb](Node& self) {
                       double* ga = grad_of(*self.inputs[0]);
                       double* gb = grad_of(*self.inputs[1]);
                       for (std::size_t r = 0; r < rows; ++r) {
                         const double* g = self.grad.data() + r * (ca + cb);
                         if (ga) {
                           for (std::size_t j = 0; j < ca; ++j) ga[r * ca + j] += g[j];
                         }
                         if (gb) {
                           for (std::size_t j = 0; j < cb; ++j) gb[r * cb + j] += g[ca + j];
                         }
                       }
                     });
}

Tensor gather_rows(const Tensor& table, std::span<const std::size_t> ids, std::optional<std::size_t> frozen_row) {
  if (table.rank() != 2) throw ShapeError("gather_rows expects a rank-2 table, got " + to_string(table.shape()));
  if (ids.empty()) throw ShapeError("gather_rows with no ids");
  const std::size_t rows = table.dim(0);
  const std::size_t width = table.dim(1);
  std::vector<double> out(ids.size() * width);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= rows) {
      throw DomainError("row id " + std::to_string(ids[i]) + " out of range for table with " +
                        std::to_string(rows) + " rows");
    }
    std::copy_n(table.data().data() + ids[i] * width, width, out.data() + i * width);
  }
  std::vector<std::size_t> saved(ids.begin(), ids.end());
  return make_result("gather_rows", {ids.size(), width}, std::move(out), {table.node()},
                     [saved = std::move(saved), width, frozen_row](Node& self) {
                       double* g = grad_of(*self.inputs[0]);
                       if (!g) return;
                       for (std::size_t i = 0; i < saved.size(); ++i) {
                         if (frozen_row && saved[i] == *frozen_row) continue;
                         for (std::size_t j = 0; j < width; ++j) g[saved[i] * width + j] += self.grad[i * width + j];
                       }
                     });
}

}  // namespace sifn::ag
