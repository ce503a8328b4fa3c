// Copyright 2026 The mcphase Authors
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

#ifndef MCPHASE_ERRORS_H
#define MCPHASE_ERRORS_H

#include <stdexcept>
#include <string>

namespace mcp {

/// Input violates a documented precondition or invariant (bad matrix, bad
/// configuration, malformed file). Maps to CLI exit code 3.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string &msg) : std::invalid_argument(msg) {}
};

/// A computation produced a result that is internally inconsistent, e.g. a
/// coincidence rate with a large imaginary residual or an arccos argument far
/// outside [-1, 1]. Maps to CLI exit code 4.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Writes or reads that failed at the OS level.
struct IoError : std::runtime_error {
    explicit IoError(const std::string &msg) : std::runtime_error(msg) {}
};

enum class ExitCode : int {
    Ok = 0,
    Usage = 2,
    Validation = 3,
    Numerical = 4,
};

}  // namespace mcp

#endif
