#pragma once

#include <stdexcept>
#include <string>

namespace lamina {

// All domain errors derive from this so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two scalars live in different real quadratic fields and the requested
// operation would need arithmetic across them.
struct UnsupportedFieldError : Error {
    explicit UnsupportedFieldError(const std::string& msg) : Error(msg) {}
};

// Points or maps from different circle models were mixed.
struct ModelMismatchError : Error {
    explicit ModelMismatchError(const std::string& msg) : Error(msg) {}
};

// Operation asked of a map for which it is undefined (wrong orientation,
// identity where a non-identity is required, ...).
struct MapDomainError : Error {
    explicit MapDomainError(const std::string& msg) : Error(msg) {}
};

// Scenario / report parsing and validation failures.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace lamina
