#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lyap {

/// A map, branch family or pressure model violates its construction invariants.
class InvalidModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the set where the requested quantity is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The operation needs a strictly monotone exponent map, which an
/// equal-slope (cohomologous to a constant) potential does not provide.
class DegenerateModel : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition of the call does not hold.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The cylinder table would exceed the configured entry budget.
class BudgetExceeded : public std::length_error {
public:
    BudgetExceeded(const std::string& what, std::size_t suggested_depth)
        : std::length_error(what), suggested_depth_(suggested_depth) {}

    std::size_t suggested_depth() const noexcept { return suggested_depth_; }

private:
    std::size_t suggested_depth_;
};

}  // namespace lyap
