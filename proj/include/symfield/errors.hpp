#pragma once

#include <stdexcept>
#include <string>

namespace symfield {

// Bad input: malformed JSON, labels out of range, violated preconditions.
// CLI maps this to exit code 1.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard enumeration or tensor bound. Exit code 2.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric routine could not certify its tolerance. Exit code 2.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A loop word falls outside the analytic rule set; the Monte Carlo
// evaluator still applies. Exit code 2.
struct not_reducible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace symfield
