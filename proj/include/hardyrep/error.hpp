#pragma once

#include <stdexcept>
#include <string>

namespace hardyrep {

// Invalid input: constraint violation in a measure, set or matrix.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of the function (e.g. a point not in the open disc).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Operation not defined for the given variant or regime.
struct UnsupportedError : std::logic_error {
    using std::logic_error::logic_error;
};

// Requested object does not fit in 64-bit integers or the enumeration limit.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

// A documented precondition of the operation does not hold.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The builder could not produce an object satisfying its contract.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hardyrep
