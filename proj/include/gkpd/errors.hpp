#pragma once

#include <stdexcept>
#include <string>

namespace gkpd {

// Base class for all runtime failures raised by the library.  The attack and
// scheme layers throw typed subclasses so callers (and the CLI harness) can
// record exactly which contract failed instead of crashing.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// gcd(a, N) > 1 where a multiplicative inverse was required.
struct NotInvertible : Error {
    using Error::Error;
};

// No n-th root of the given residue exists modulo N.
struct NoRoot : Error {
    using Error::Error;
};

// Root finding would require a search beyond the configured prime bound.
struct TooLarge : Error {
    using Error::Error;
};

// Dense token expansion would exceed the configured entry cap.
struct ExpansionTooLarge : Error {
    using Error::Error;
};

// eval_token called with an unassigned variable.
struct MissingAssignment : Error {
    using Error::Error;
};

// Member-side key computation for a group the node does not belong to.
struct NotAMember : Error {
    using Error::Error;
};

// Group-key inputs whose groups do not stand in the required relation.
struct ShapeMismatch : Error {
    using Error::Error;
};

// Collusion requires tokens from two distinct owners.
struct SameOwner : Error {
    using Error::Error;
};

// Restricted attacker oracle queried for (or built from) a group containing
// the token owner.
struct OwnerInGroup : Error {
    using Error::Error;
};

// Scenario or file-format validation failure; message names the field.
struct ConfigError : Error {
    using Error::Error;
};

// Contract violations (programming errors, not data-dependent failures).
struct ModulusMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

// KGC-privileged operation invoked on a public-only modulus.
struct MissingFactorization : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace gkpd
