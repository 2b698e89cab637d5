#pragma once

#include <stdexcept>
#include <string>

namespace lextent {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Relation closure would violate irreflexivity/antisymmetry.
struct CycleError : Error { using Error::Error; };

// Element id out of range for its poset.
struct IndexError : Error { using Error::Error; };

// Pinned sum pin is not maximal in the lower part.
struct NotMaximalError : Error { using Error::Error; };

// Pinned sum pin is not minimal in the upper part.
struct NotMinimalError : Error { using Error::Error; };

// add_relation called on an already comparable pair.
struct AlreadyComparableError : Error { using Error::Error; };

// Input exceeds a configured size or memory budget.
struct TooLargeError : Error { using Error::Error; };

// Chain cover passed to the width-2 engine is not a two-chain partition.
struct InvalidCoverError : Error { using Error::Error; };

// Argument outside an operation's domain.
struct DomainError : Error { using Error::Error; };

// Pair passed to the path constructor is not coprime.
struct NotCoprimeError : Error { using Error::Error; };

// Internal search missed a result it is contractually required to find.
struct InternalSearchFailureError : Error { using Error::Error; };

// Stage-1 family poset has no successor pair.
struct NoChildrenError : Error { using Error::Error; };

// Malformed poset text input.
struct ParseError : Error { using Error::Error; };

// Requested exact size cannot accommodate the construction.
struct InfeasibleError : Error { using Error::Error; };

}  // namespace lextent
