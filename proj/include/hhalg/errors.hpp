#pragma once

#include <stdexcept>
#include <string>

namespace hhalg {

// Malformed input: bad definitions, dimension mismatches, degree inconsistencies.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The computation is well-posed but the requested bounds or budgets cannot be honoured.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The ground ring does not support the requested operation.
class UnsupportedGround : public InputError {
public:
    using InputError::InputError;
};

// An internal consistency check failed (d^2 != 0, non-associativity, ...).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace hhalg
