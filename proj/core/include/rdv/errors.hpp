#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rdv {

/// Input outside the mathematical domain of an operation (e >= 1, a <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative method stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed or inconsistent input document. `field` is a dotted path when known.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::string field = {})
        : std::runtime_error(field.empty() ? what : field + ": " + what),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace rdv
