// Copyright 2026 The dicke-battery Authors
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

// errors.hpp — Typed error codes shared between the C++ core and the C API.

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

enum class ErrorCode {
    invalid_argument = 1,   // bad parameter value or inconsistent inputs
    degenerate_angle = 2,   // mixing angle at 0 or pi; closed forms singular
    range = 3,              // quantity not representable / out of domain
    dimension_mismatch = 4, // operator and state dimensions disagree
    step_underflow = 5,     // adaptive integrator step fell below the floor
    positivity = 6,         // density matrix lost positivity beyond tolerance
    bracket = 7,            // root bracketing failed
    io = 8,                 // file could not be read or written
    internal = 9,           // invariant broken inside the library
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace dicke
