#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdkp {

// Base type for every failure this library reports.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violation: off-shell momentum, angle at an excluded endpoint,
// unsupported parameter value, and the like.
struct domain_error : error {
    using error::error;
};

// Propagator evaluated inside its pole guard band.
struct pole_error : error {
    using error::error;
};

// Two independent evaluation pipelines disagreed beyond tolerance.
struct mismatch_error : error {
    using error::error;
};

// Text input (CLI mini-grammar, field table) failed to parse.
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " at position " + std::to_string(pos)), position(pos) {}
};

// File or stream could not be read or written.
struct io_error : error {
    using error::error;
};

}  // namespace sdkp
