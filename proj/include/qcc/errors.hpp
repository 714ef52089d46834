#pragma once

#include <stdexcept>
#include <string>

namespace qcc {

// Precondition violations on user-facing inputs (CLI exit code 1).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested at a point where the quantity blows up.
class singularity_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Adaptive refinement failed to reach the requested tolerance.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact rational arithmetic left the 64-bit range; callers fall back to double.
class rational_overflow : public std::overflow_error {
public:
    rational_overflow() : std::overflow_error("rational arithmetic overflow") {}
};

} // namespace qcc
