#pragma once

#include <stdexcept>
#include <string>

namespace pecoh {

// Each error family maps onto one CLI exit code (see tools/pecoh.cpp).

/// Malformed input: rule files, complex files, group specifications.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size budget would be exceeded.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant; indicates a bug, never bad user input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace pecoh
