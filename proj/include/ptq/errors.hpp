// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace ptq {

// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// T or T^-1 requested at the exceptional point |alpha| >= 1.
class SingularTransform : public DomainError {
public:
    SingularTransform() : DomainError("singular transform: |alpha| >= 1") {}
};

// Adaptive quadrature ran out of panel budget. Carries the best estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// Fock oracle cannot represent the requested configuration faithfully.
class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario configuration rejected; field() names the offending key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& msg)
        : std::invalid_argument(field + ": " + msg), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace ptq
