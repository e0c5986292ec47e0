// Copyright 2026 The qgeo Authors
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

#ifndef QGEO_ERRORS_H
#define QGEO_ERRORS_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgeo {

enum class ErrorCode {
    InvalidArgument,
    NotHermitian,
    NotPSD,
    TraceNotOne,
    NotUnitary,
    DimensionMismatch,
    SingularMatrix,
    NumericalFailure,
    DegenerateSpectrum,
    AmbiguousBranchMatching,
    StepTooLarge,
    RadiusOutOfDomain,
    DomainError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. `residual()` carries the measured
/// violation (e.g. the Hermiticity defect) when one is meaningful, else 0.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message, double residual = 0.0);

    ErrorCode code() const noexcept { return code_; }
    double residual() const noexcept { return residual_; }

   private:
    ErrorCode code_;
    double residual_;
};

}  // namespace qgeo

#endif
