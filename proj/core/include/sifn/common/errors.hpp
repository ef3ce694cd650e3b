// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sifn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor shapes that do not compose.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain of an operation (log of a non-positive
/// number, rating outside [1,5], fully masked softmax row, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed, missing or inconsistent input data and files.
class DataError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf gradients, divergence, failed gradient checks.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values or unknown names.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sifn
