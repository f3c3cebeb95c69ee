#pragma once

#include <stdexcept>
#include <string>

namespace ea {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data: bad labels, out-of-range indices, conflicting
/// table entries, unparsable files. Distinct from axiom violations,
/// which are reported through ValidationReport values.
class StructuralError : public Error {
public:
    explicit StructuralError(const std::string& what) : Error(what) {}
};

/// An operation was invoked outside its stated precondition
/// (e.g. diff(b,a) with a not below b).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// A scan or search would exceed its configured budget. Never silently
/// converted into a "no" answer.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& what) : Error(what) {}
};

/// sum_family was called on a non-summable list; carries the length of
/// the first prefix whose sum is undefined.
class NotSummableError : public Error {
public:
    NotSummableError(const std::string& what, std::size_t failing_prefix)
        : Error(what), failing_prefix_len(failing_prefix) {}
    std::size_t failing_prefix_len;
};

} // namespace ea
