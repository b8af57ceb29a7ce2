#pragma once

#include <stdexcept>
#include <string>

namespace ghr {

// Invalid user-supplied parameters (CLI exit code 2).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Instance exceeds a configured budget (CLI exit code 3).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Exact-geometry degeneracy, e.g. a probe point lying on a hyperplane.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal invariant; never round or continue past one of these.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ghr
