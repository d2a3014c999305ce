#pragma once

#include <stdexcept>
#include <string>

namespace uavloc {

/// Malformed input: unknown ids, schema violations, invalid parameters.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request that cannot be satisfied: infeasible signal plan or fleet limit.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive search refused because the candidate count exceeds the budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Observations that admit no feasible traffic state.
class InconsistentObservation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A formula was asked to divide by an empty candidate set.
class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal invariant broken; signals a bug rather than bad input.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace uavloc
