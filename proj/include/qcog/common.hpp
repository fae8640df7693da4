// Copyright 2026 qcog developers
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

#ifndef QCOG_COMMON_HPP
#define QCOG_COMMON_HPP

#include <stdexcept>
#include <string>

namespace qcog {

inline constexpr const char* kToolVersion = "0.1.0";

// Numeric tolerances shared across modules.
inline constexpr double kNormTol = 1e-12;          // state normalization
inline constexpr double kProjectorTol = 1e-10;     // idempotence / orthogonality
inline constexpr double kTraceRankTol = 1e-8;      // projector trace vs rank
inline constexpr double kProbClampTol = 1e-10;     // largest excursion clamped quietly
inline constexpr double kZeroProbEps = 1e-12;      // Lueders precondition
inline constexpr double kEmpiricalSumTol = 1e-3;   // empirical tables (4-decimal data)
inline constexpr double kModelSumTol = 1e-10;      // model-generated tables

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
struct ZeroProbabilityOutcome : Error {
    using Error::Error;
};
struct DegenerateMarginal : Error {
    using Error::Error;
};
struct DegenerateFamily : Error {
    using Error::Error;
};
struct NotAState : Error {
    using Error::Error;
};
struct InvalidGeometry : Error {
    using Error::Error;
};
struct InconsistentGeometry : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// Clamps a should-be probability to [0,1]. Excursions beyond kProbClampTol are
// never absorbed quietly; they indicate a broken precondition upstream.
inline double clamp_probability(double p, const char* where) {
    if (p < -kProbClampTol || p > 1.0 + kProbClampTol) {
        throw InvalidArgument(std::string(where) + ": value " + std::to_string(p) +
                              " outside [0,1] beyond tolerance");
    }
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

}  // namespace qcog

#endif  // QCOG_COMMON_HPP
