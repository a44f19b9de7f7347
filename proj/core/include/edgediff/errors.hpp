// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace edgediff {

enum class ErrorCode {
    InvalidWhite,
    DegenerateWhite,
    SpaceMismatch,
    DimensionMismatch,
    Domain,
    InvalidConfig,
    Io,
    Format,
};

const char* to_string(ErrorCode code);

/// Raised for caller-side problems: bad arguments, mismatched inputs,
/// unreadable or malformed files. The CLI maps these to exit code 1.
class InputError : public std::invalid_argument {
public:
    InputError(ErrorCode code, const std::string& what)
        : std::invalid_argument(what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace edgediff
