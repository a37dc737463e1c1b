#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hkbase {

/// Malformed input: wrong dimensions, bad parameters, unparsable documents.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input is well formed but numerically impossible (e.g. a non-integral h0).
class InconsistentInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The enumerator would exceed its configured candidate budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact result does not fit the 64-bit rational representation.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A failed numerical rule. `rule` is a stable identifier, `witness` holds
/// component indices or sub-multiplicities that exhibit the failure.
struct Violation {
    std::string rule;
    std::string detail;
    std::vector<long long> witness;

    bool operator==(const Violation&) const = default;
};

} // namespace hkbase
