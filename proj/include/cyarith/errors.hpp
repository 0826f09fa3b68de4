#pragma once
#include <stdexcept>
#include <string>

namespace cyarith {

// Mathematical precondition violated (CLI exit code 3).
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Prime of bad reduction where good reduction is required.
struct bad_reduction_error : precondition_error {
    explicit bad_reduction_error(const std::string& what) : precondition_error(what) {}
};

// Numerical routine failed to converge or cannot reach the requested accuracy
// (CLI exit code 4).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Two supposedly equivalent computation paths disagreed; indicates a bug, not
// a user error.
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace cyarith
