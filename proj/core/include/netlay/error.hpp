#pragma once

#include <stdexcept>
#include <string>

namespace netlay {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input data (edge lists, layout/community files).
struct ParseError : Error {
    using Error::Error;
};

// Invalid parameters or inconsistent inputs (bad SimParams, label mismatches, ...).
struct ConfigError : Error {
    using Error::Error;
};

// File system problems (missing or unwritable files).
struct IoError : Error {
    using Error::Error;
};

// The integrator blew up; callers should retry with a smaller timestep.
struct DivergenceError : Error {
    using Error::Error;
};

} // namespace netlay
