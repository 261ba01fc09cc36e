// Copyright 2026 The qmbqc Authors
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

#ifndef QMBQC_ERRORS_HPP
#define QMBQC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmbqc {

enum class ErrorCode {
    InvalidArgument,
    NonPrimeCharacteristic,
    ReduciblePolynomial,
    DimensionMismatch,
    ZeroInverse,
    WrongCharacteristic,
    MissingRingPolynomial,
    WrongFormalism,
    NonUnitary,
    SiteOutOfRange,
    ZeroProbabilityForced,
    NoRealSolution,
    NotClifford,
    NotControlledPauliForm,
    OrderCapExceeded,
    UniversalityViolated,
    NonInvertibleLambda,
    NonHermitian,
    CompilationDiverged,
    UnsupportedFormalism,
    StateTooLarge,
    FrameMismatch,
    NonInvertibleGcd,
    ParseError,
    TableMismatch,
};

const char *error_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &msg)
        : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {
    }
    ErrorCode code() const {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace qmbqc

#endif
