#pragma once

#include <stdexcept>
#include <string>

namespace hypermult {

/// Malformed or invariant-violating input (descriptor files, point-cloud CSV).
/// `invariant()` names the first violated rule, e.g. "degree" or "curve count".
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string invariant, const std::string& what)
        : std::runtime_error(what), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

/// A parameter lies outside the domain where a formula or bound is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical scheme did not reach its tolerance within its work budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hypermult
