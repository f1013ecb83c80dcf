#pragma once

#include <stdexcept>

namespace gnt {

// Every failure the library raises derives from Error; the C API maps each
// subclass onto one status code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented size limit (q, m, grid dimension) was exceeded.
struct LimitError : Error {
    using Error::Error;
};

// Malformed input text (JSON, CSV) or configuration.
struct ParseError : Error {
    using Error::Error;
};

// Inputs are well-formed but violate an operation's precondition.
struct PreconditionError : Error {
    using Error::Error;
};

// A numerical procedure could not deliver a trustworthy answer.
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace gnt
