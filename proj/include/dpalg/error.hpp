#pragma once

#include <stdexcept>
#include <string>

namespace dpalg {

enum class ErrorKind {
    DivisionByZero,
    FieldMismatch,
    DimensionMismatch,
    NoSolution,
    InvalidArgs,
    BadSplit,
    ShapeMismatch,
    TooLarge,
    ArityTooLarge,
    DegreeOverflow,
    UnsupportedPresentation,
    BadCharacteristic,
    TruncationTooSmall,
    NotSquareZero,
    NotSplit,
    UnsupportedSymbol,
    TruncationMismatch,
    WellDefinednessFailure,
    NotNilpotentBasis,
    ParseError,
    ValidationError,
    TaskError,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the error class
/// named in the public contracts.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace dpalg
