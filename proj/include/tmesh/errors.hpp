#pragma once

#include <stdexcept>
#include <string>

namespace tmesh {

enum class ErrorKind {
    InvalidDomain,
    InvalidBreakpoints,
    NonIntegerMidpoint,
    CellOutsideActiveRegion,
    NotACell,
    DimensionTooSmall,
    DimensionMismatch,
    ClassificationAmbiguous,
    ComplexIntegrity,
    PreconditionViolated,
    NotFound,
    InsufficientKnots,
    NonAdjacentCellBounds,
    DegenerateKnots,
    SameAnchor,
    MalformedInput,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace tmesh
