#pragma once

#include <stdexcept>
#include <string>

namespace fade {

// Runtime numerical failures: singular systems, divergence, non-convergence.
// Parameter/precondition violations use std::invalid_argument.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fade
