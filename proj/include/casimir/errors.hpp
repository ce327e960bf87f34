#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Numerical non-convergence (quadrature budget, root finding, fits).
// CLI maps this to exit code 3; validation errors (std::invalid_argument) to 2.
class convergence_error : public std::runtime_error {
 public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace casimir
