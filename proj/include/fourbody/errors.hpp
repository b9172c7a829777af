#pragma once

#include <stdexcept>
#include <string>

namespace fourbody {

/// Invalid input or state outside the domain of an operation (CLI exit code 2).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical procedure failed to meet its contract (CLI exit code 3).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A node vector is (numerically) zero: the state sits on the boundary of the
/// angle-action chart.
struct DegenerateNode : DomainError {
    explicit DegenerateNode(const std::string& msg) : DomainError(msg) {}
};

/// A two-body energy is non-negative, so no osculating ellipse exists.
struct NonElliptic : DomainError {
    explicit NonElliptic(const std::string& msg) : DomainError(msg) {}
};

/// A parameter left the validity range of a closed-form expression.
struct OutOfRange : DomainError {
    explicit OutOfRange(const std::string& msg) : DomainError(msg) {}
};

/// Two bodies approached below the configured separation threshold.
struct CollisionDetected : NumericalError {
    explicit CollisionDetected(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace fourbody
