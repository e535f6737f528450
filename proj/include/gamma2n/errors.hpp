#pragma once

#include <stdexcept>
#include <string>

namespace gamma2n {

// Formula evaluated outside its geometric domain (e.g. arccosh argument
// below 1 beyond tolerance, degenerate hexagon). For chains of hyperbolic
// identities this usually signals corrupted inputs rather than user error.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Caller-supplied parameters violate a documented bound (n < 3, t > c, ...).
class InvalidParams : public std::invalid_argument {
public:
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

// Root finding failed to produce the required root (no sign change in the
// bracket, or the selection rule did not isolate exactly one root).
class NoValidRoot : public std::runtime_error {
public:
    explicit NoValidRoot(const std::string& what) : std::runtime_error(what) {}
};

// A coordinate change left its chart: the requested representation exists
// only for part of the parameter space (see dual_params).
class OutOfDomain : public std::domain_error {
public:
    explicit OutOfDomain(const std::string& what) : std::domain_error(what) {}
};

} // namespace gamma2n
