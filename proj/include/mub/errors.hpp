#pragma once

#include <stdexcept>
#include <string>

namespace mub {

// Thrown when an iterative routine fails to reach its tolerance or an
// input is numerically unusable (rank deficiency, non-finite values).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mub
