#pragma once

#include <stdexcept>

namespace hecke {

// Enumeration size limits and precision-escalation caps are reported through
// dedicated types so callers (in particular the CLI) can map them to exit codes.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hecke
