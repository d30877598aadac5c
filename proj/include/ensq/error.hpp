// Copyright 2026 The ensq Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ensq {

enum class Errc {
    DimensionMismatch,
    DuplicateTarget,
    IndexOutOfRange,
    TooManyNodes,
    NotUnitary,
    NonFinite,
    LengthMismatch,
    LeakedState,
    SameQubit,
    UnsupportedGate,
    TooManyQubitsForVerification,
    NoAncillaAvailable,
    BadArity,
    ZeroDetuning,
    ResonanceMismatch,
    StepTooCoarse,
    InfeasibleTiming,
    ParseError,
    InvalidArgument,
};

inline std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::DuplicateTarget: return "DuplicateTarget";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::TooManyNodes: return "TooManyNodes";
        case Errc::NotUnitary: return "NotUnitary";
        case Errc::NonFinite: return "NonFinite";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::LeakedState: return "LeakedState";
        case Errc::SameQubit: return "SameQubit";
        case Errc::UnsupportedGate: return "UnsupportedGate";
        case Errc::TooManyQubitsForVerification: return "TooManyQubitsForVerification";
        case Errc::NoAncillaAvailable: return "NoAncillaAvailable";
        case Errc::BadArity: return "BadArity";
        case Errc::ZeroDetuning: return "ZeroDetuning";
        case Errc::ResonanceMismatch: return "ResonanceMismatch";
        case Errc::StepTooCoarse: return "StepTooCoarse";
        case Errc::InfeasibleTiming: return "InfeasibleTiming";
        case Errc::ParseError: return "ParseError";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library. `code()` is stable and is what the
/// command-line front end maps to exit codes.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace ensq
