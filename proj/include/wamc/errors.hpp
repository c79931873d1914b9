/*
 * Copyright 2026 The wamc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef WAMC_ERRORS_HPP
#define WAMC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wamc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown semiring name or otherwise invalid configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed model or formula text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Operands of incompatible size.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Semantically invalid request against a model: unknown label or state,
/// invalid path, partition that is not a bisimulation, mismatched automata.
class ModelError : public Error {
public:
    using Error::Error;
};

/// The request is well formed but outside what the semiring supports.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A numeric routine failed its residual check.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace wamc

#endif // WAMC_ERRORS_HPP
