// Copyright 2026 The qcrit Authors
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

#include "qcrit/error.h"

namespace qcrit {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotPsd:
            return "NotPsd";
        case ErrorCode::BadTrace:
            return "BadTrace";
        case ErrorCode::BadNorm:
            return "BadNorm";
        case ErrorCode::DimMismatch:
            return "DimMismatch";
        case ErrorCode::TooLarge:
            return "TooLarge";
        case ErrorCode::BadOverlap:
            return "BadOverlap";
        case ErrorCode::BadParams:
            return "BadParams";
        case ErrorCode::ZeroMass:
            return "ZeroMass";
        case ErrorCode::ZeroMassOutcome:
            return "ZeroMassOutcome";
        case ErrorCode::NonUniformPrior:
            return "NonUniformPrior";
        case ErrorCode::NotBinaryResidual:
            return "NotBinaryResidual";
        case ErrorCode::BadSeedLength:
            return "BadSeedLength";
        case ErrorCode::BadShape:
            return "BadShape";
        case ErrorCode::BadRange:
            return "BadRange";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::UnknownExperiment:
            return "UnknownExperiment";
        case ErrorCode::InvalidDistribution:
            return "InvalidDistribution";
        case ErrorCode::InvalidPovm:
            return "InvalidPovm";
        case ErrorCode::InvalidCode:
            return "InvalidCode";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {
}

}  // namespace qcrit
