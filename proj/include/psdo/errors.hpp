/* Copyright (C) 2026 The psdo authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace psdo {

enum class ErrorKind {
  InvalidArgument,
  OutOfTable,
  NonFiniteDerivative,
  AngleSumTooLarge,
  SpectrumHit,
  NotDiagonalizable,
  SpectrumNotSectorial,
  NotSymmetric,
  NotPositiveDefinite,
  EllipticityFailure,
  ModeSingular,
  ContractionFailure,
  NoConvergence,
  DivisionByZero,
  TooManyForEnumeration,
  ConfigParse,
  Validation,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the C
/// API) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace psdo
