#pragma once

#include <stdexcept>
#include <string>

namespace exphull {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured step/degree/candidate budget was exceeded.
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& msg) : Error("resource limit: " + msg) {}
};

/// Input text could not be parsed.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("parse error (line " + std::to_string(line_) + "): " + msg), line(line_) {}
};

/// A parsed object violates a structural invariant.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

/// A domain precondition failed (named per operation, e.g. "inexpressible
/// exponential", "non-colinear translations", "flag contradiction").
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

} // namespace exphull
