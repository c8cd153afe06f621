// Copyright 2026 The qdil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qdil {

enum class ErrorKind {
  Dimension,
  NotState,
  NotHermitian,
  NotPsd,
  ChoiNegative,
  Incomplete,
  UnknownLabel,
  OutsideAlgebra,
  NotRepresentation,
  KernelNotPositive,
  InsufficientDepth,
  Schema,
  InvalidArgument,
};

/** Machine-readable name, e.g. "choi-negative". */
const char* error_kind_name(ErrorKind kind);

/**
 * Every failure raised by the library. `witness()` carries the numerical
 * evidence (a residual or an offending eigenvalue) where one exists.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double witness = 0.0);

  ErrorKind kind() const { return kind_; }
  double witness() const { return witness_; }

 private:
  ErrorKind kind_;
  double witness_;
};

}  // namespace qdil
