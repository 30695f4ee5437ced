#pragma once

#include <stdexcept>
#include <string>

namespace dalg {

// Caller misuse: bad arguments, violated preconditions.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. Carries 1-based position when known.
struct ParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& what, int line_, int col_)
        : std::runtime_error(what), line(line_), column(col_) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Inputs the engines reject: order-0 equations, coupled indeterminates, ...
struct UnsupportedInput : std::runtime_error {
    explicit UnsupportedInput(const std::string& what) : std::runtime_error(what) {}
};

// The target expression is degenerate (denominator vanishes on all solutions).
struct DegenerateExpression : std::runtime_error {
    explicit DegenerateExpression(const std::string& what) : std::runtime_error(what) {}
};

// Elimination produced nothing usable (trivial or inconsistent ideal).
struct NoAdeFound : std::runtime_error {
    explicit NoAdeFound(const std::string& what) : std::runtime_error(what) {}
};

// Should not happen; indicates a bug rather than bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dalg
