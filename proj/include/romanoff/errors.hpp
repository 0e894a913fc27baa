#pragma once

#include <stdexcept>

namespace romanoff {

// An operation exceeded its configured compute or memory budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An embedded constant or internal cross-check failed; signals a
// transcription or arithmetic bug, not bad input.
struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace romanoff
