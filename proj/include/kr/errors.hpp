#pragma once

#include <stdexcept>
#include <string>

namespace kr {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition or unusable input (table mismatch, non-monic divisor,
// non-unit, out-of-range truncation order, membership failure, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Text that does not conform to the polynomial grammar.
struct ParseError : Error {
    ParseError(const std::string& what, int line, int col)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
          line(line), col(col) {}
    int line;
    int col;
};

// A self-check that can only fail if the implementation itself is wrong
// (post-verification of constructed words, certificate mismatches).
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error("internal check failed: " + what) {}
};

} // namespace kr
