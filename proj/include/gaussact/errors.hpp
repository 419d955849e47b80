// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace gaussact {

struct ShapeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A symplectic spectrum fell below the uncertainty bound.
struct UnphysicalState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative eigensolver did not converge; message carries the residual.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidChannel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symplectic completion degenerated; indicates a bug for CP-valid channels.
struct CompletionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoFeasiblePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoActivation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfinityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gaussact
