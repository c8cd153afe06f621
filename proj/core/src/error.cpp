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

#include "qdil/error.hpp"

namespace qdil {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension:
      return "dimension";
    case ErrorKind::NotState:
      return "not-state";
    case ErrorKind::NotHermitian:
      return "not-hermitian";
    case ErrorKind::NotPsd:
      return "not-psd";
    case ErrorKind::ChoiNegative:
      return "choi-negative";
    case ErrorKind::Incomplete:
      return "incomplete";
    case ErrorKind::UnknownLabel:
      return "unknown-label";
    case ErrorKind::OutsideAlgebra:
      return "outside-algebra";
    case ErrorKind::NotRepresentation:
      return "not-representation";
    case ErrorKind::KernelNotPositive:
      return "kernel-not-positive";
    case ErrorKind::InsufficientDepth:
      return "insufficient-depth";
    case ErrorKind::Schema:
      return "schema";
    case ErrorKind::InvalidArgument:
      return "invalid-argument";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double witness)
    : std::runtime_error(what), kind_(kind), witness_(witness) {}

}  // namespace qdil
