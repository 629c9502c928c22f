#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bexsam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid argument values or malformed in-memory inputs
struct InputError : Error {
    using Error::Error;
};

// malformed file content; line is 1-based
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_no)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    std::size_t line;
};

// request exceeds a hard size limit (e.g. dense tables for too many variables)
struct CapacityError : Error {
    using Error::Error;
};

// discovery cannot proceed (empty table, degenerate counts)
struct DiscoveryError : Error {
    using Error::Error;
};

// dataset does not cover all patterns and strict mode was requested
struct CompletenessError : Error {
    using Error::Error;
};

}  // namespace bexsam
