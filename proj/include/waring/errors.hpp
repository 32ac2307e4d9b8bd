// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace waring {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Division by an exact zero (scalar inverse, singular denominators).
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input. `position` is a byte offset when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t position = npos)
        : Error(position == npos ? what : what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position;
};

/// The zero polynomial where a nonzero one is required.
class ZeroPolynomialError : public Error {
public:
    using Error::Error;
};

/// Dimension mismatch; messages name both shapes.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be invertible is not.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Violated precondition of a documented operation contract.
class ContractError : public Error {
public:
    using Error::Error;
};

/// An exact internal re-check failed. Indicates a bug, never bad input.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Randomized witness search exhausted its budget. Not a contract violation.
class WitnessNotFoundError : public Error {
public:
    using Error::Error;
};

/// File / stream problems in the CLI layer.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace waring
