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

#ifndef _QCRIT_ERROR_H
#define _QCRIT_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcrit {

/// Every failure the library reports carries one of these codes. The names
/// are stable and appear verbatim in CLI error output.
enum class ErrorCode {
    NotHermitian,
    NotPsd,
    BadTrace,
    BadNorm,
    DimMismatch,
    TooLarge,
    BadOverlap,
    BadParams,
    ZeroMass,
    ZeroMassOutcome,
    NonUniformPrior,
    NotBinaryResidual,
    BadSeedLength,
    BadShape,
    BadRange,
    ParseError,
    UnknownExperiment,
    InvalidDistribution,
    InvalidPovm,
    InvalidCode,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &detail);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace qcrit

#endif
