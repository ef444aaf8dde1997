#pragma once

#include <stdexcept>

namespace inc4 {

// Raised when a computation would exceed its configured resource cap.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace inc4
