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
#include "psdo/errors.hpp"

namespace psdo {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfTable: return "OutOfTable";
    case ErrorKind::NonFiniteDerivative: return "NonFiniteDerivative";
    case ErrorKind::AngleSumTooLarge: return "AngleSumTooLarge";
    case ErrorKind::SpectrumHit: return "SpectrumHit";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::SpectrumNotSectorial: return "SpectrumNotSectorial";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::EllipticityFailure: return "EllipticityFailure";
    case ErrorKind::ModeSingular: return "ModeSingular";
    case ErrorKind::ContractionFailure: return "ContractionFailure";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::TooManyForEnumeration: return "TooManyForEnumeration";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::Validation: return "Validation";
  }
  return "Unknown";
}

}  // namespace psdo
