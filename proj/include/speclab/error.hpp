#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sampled function produced a non-finite value.
struct SamplingError : Error {
    using Error::Error;
};

// Too many cells sit inside the equality tolerance band of a threshold.
struct DegenerateThreshold : Error {
    using Error::Error;
};

// A construction precondition (positivity, resolution, parameter range) failed.
struct ConstructionError : Error {
    using Error::Error;
};

// An iterative or direct solver did not converge or broke down.
struct SolverError : Error {
    using Error::Error;
};

// A post-condition guard of a computed object failed.
struct GuardViolation : Error {
    using Error::Error;
};

}  // namespace speclab
