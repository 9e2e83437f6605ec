// Copyright 2026 The dqc1sim Authors.
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

#ifndef DQC1_ERRORS_HPP
#define DQC1_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dqc1 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

/// Raised when a protocol does not have the structure a transform or backend expects.
struct ShapeError : Error {
    using Error::Error;
};

struct BackendLimitError : Error {
    using Error::Error;
};

/// Malformed descriptor or matrix text. `where` is a JSON pointer or byte offset.
struct ParseError : Error {
    ParseError(const std::string &msg, std::string where_)
        : Error(where_.empty() ? msg : msg + " (at " + where_ + ")"), where(std::move(where_)) {}
    std::string where;
};

}  // namespace dqc1

#endif
