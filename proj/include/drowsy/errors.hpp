#pragma once

#include <stdexcept>
#include <string>

namespace drowsy {

// Malformed or invalid scenario/config text. Messages carry "line N: ..."
// where a source line is known.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures (missing input, unwritable output).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace drowsy
