#pragma once

#include <stdexcept>
#include <string>

namespace gibbslab {

// Bad arguments or violated preconditions (wrong alphabet, k > n, budget
// exceeded, malformed input).
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& msg) : std::invalid_argument(msg) {}
};

// A theorem hypothesis requested by the caller does not hold
// (e.g. the conditional-entropy schedule with theta >= 1/|A|).
struct hypothesis_violation : std::invalid_argument {
    explicit hypothesis_violation(const std::string& msg) : std::invalid_argument(msg) {}
};

// Iterative numerics failed (non-convergence, eigendata inconsistency).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An exact identity that must hold by construction was violated; indicates
// a broken internal invariant rather than bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

// A constant fit was requested on a degenerate grid.
struct fit_error : std::runtime_error {
    explicit fit_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gibbslab
