// Copyright 2026 The Onsager Algebra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONSAGER_ERRORS_HPP
#define ONSAGER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace onsager {

/// Operands with incompatible (Q, N) or matrix shapes.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string &what) : std::invalid_argument(what) {}
};

/// Malformed model specification or configuration file.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

/// Unknown or unsupported model kind.
class ModelKindError : public ConfigError {
 public:
  explicit ModelKindError(const std::string &what) : ConfigError(what) {}
};

/// Dense realization would exceed the configured dimension cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string &what) : std::runtime_error(what) {}
};

/// Singular, non-Hermitian or otherwise ill-posed numerical input.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace onsager

#endif  // ONSAGER_ERRORS_HPP
