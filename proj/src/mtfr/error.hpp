/* Copyright (C) 2026 The mtfr Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace mtfr {

enum class ErrorKind {
  InvalidInput,
  DimensionMismatch,
  NonSymmetric,
  Singular,
  NonUnitary,
  NotSymplectic,
  NotFree,
  NoTauFound,
  NotBlockDiagonal,
  RealMatrix,
  UnsupportedDilation,
  UnsupportedShape,
  GridTooLarge,
  RadiusExceedsGrid,
  OffGridPoint,
  DegenerateFit,
  WrongAlternative,
  // Internal consistency failures: a documented guarantee did not hold.
  NumericalFailure,
  RealnessFailure,
  TrailingNotReal,
  RankZero,
};

const char* error_kind_name(ErrorKind kind);

// True for kinds that signal an internal assertion rather than bad input.
bool is_internal(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mtfr
