#pragma once

#include <stdexcept>
#include <string>

namespace deltalog {

/// Base class for all errors raised by the engine.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lexical or syntactic error, with 1-based source location.
struct ParseError : Error {
    int line;
    int column;
    ParseError(std::string msg, int line_, int col_)
        : Error(std::move(msg) + " (line " + std::to_string(line_) + ", column " +
                std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

/// Static-check failure: safety, arity, stratification.
struct CheckError : Error {
    using Error::Error;
};

/// Schema mismatch between relations or deltas.
struct SchemaError : Error {
    using Error::Error;
};

/// Constant outside the active domain, unbound predicate, missing delta.
struct EvalError : Error {
    using Error::Error;
};

/// Universe or relation size cap exceeded.
struct SizeCapError : Error {
    using Error::Error;
};

/// Fixpoint iteration exceeded max_iters.
struct DivergenceError : Error {
    using Error::Error;
};

/// Maintenance adjustment iteration exceeded max_iters.
struct MaintenanceError : Error {
    using Error::Error;
};

/// Law-checking domain too large for exhaustive enumeration and no seed given.
struct DomainTooLargeError : Error {
    using Error::Error;
};

}  // namespace deltalog
