#pragma once

#include <stdexcept>

namespace fpx {

// Error types named after the contract they guard. All derive from
// std::runtime_error so callers can catch the family or the base.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RadiusOutOfRange : Error {
    using Error::Error;
};

struct TooLargeForOracle : Error {
    using Error::Error;
};

struct NonFiniteIntegrand : Error {
    using Error::Error;
};

struct SampleBudgetTooSmall : Error {
    using Error::Error;
};

struct InfeasibleRadius : Error {
    using Error::Error;
};

// Construction-time rejection of densities violating the model contract
// (normalization, periodicity, positivity floor, malformed tables).
struct DensityError : Error {
    using Error::Error;
};

} // namespace fpx
