#pragma once

#include <stdexcept>
#include <string>

namespace specdim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition or malformed input.
struct ContractError : Error {
    using Error::Error;
};
// Requested scale finer than the oracle can resolve.
struct ResolutionError : Error {
    using Error::Error;
};
// Result would exceed a representability bound (safe integers, coefficients).
struct CapacityError : Error {
    using Error::Error;
};
// Infinite-product truncation cannot reach the configured epsilon.
struct TruncationError : Error {
    using Error::Error;
};
struct NotInSupportError : Error {
    using Error::Error;
};
struct UnsupportedModelError : Error {
    using Error::Error;
};
// A computation produced a non-real value where symmetry demands real output.
struct SymmetryError : Error {
    using Error::Error;
};

} // namespace specdim
