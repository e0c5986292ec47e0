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

#include "qgeo/errors.h"

namespace qgeo {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotPSD:
            return "NotPSD";
        case ErrorCode::TraceNotOne:
            return "TraceNotOne";
        case ErrorCode::NotUnitary:
            return "NotUnitary";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::SingularMatrix:
            return "SingularMatrix";
        case ErrorCode::NumericalFailure:
            return "NumericalFailure";
        case ErrorCode::DegenerateSpectrum:
            return "DegenerateSpectrum";
        case ErrorCode::AmbiguousBranchMatching:
            return "AmbiguousBranchMatching";
        case ErrorCode::StepTooLarge:
            return "StepTooLarge";
        case ErrorCode::RadiusOutOfDomain:
            return "RadiusOutOfDomain";
        case ErrorCode::DomainError:
            return "DomainError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message, double residual)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      residual_(residual) {}

}  // namespace qgeo
