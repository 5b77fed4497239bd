#pragma once

#include <stdexcept>

namespace rowsketch {

// Thrown when an iterative kernel exhausts its sweep/restart budget or a
// sampled subproblem stays rank-deficient after the allowed retries.
// Invalid arguments and violated preconditions use std::invalid_argument.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rowsketch
