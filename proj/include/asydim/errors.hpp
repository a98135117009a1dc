#pragma once

#include <stdexcept>
#include <string>

namespace asydim {

// Thrown when a slope/dimension fit cannot be formed (too few scales,
// nonpositive statistics, empty windows).
struct EstimationError : std::runtime_error {
    explicit EstimationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Eigensolve / quadrature / overflow failures.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Generator exceeded its configured memory budget.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Net construction failed its covering-radius certificate.
struct DiscretizationError : std::runtime_error {
    explicit DiscretizationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace asydim
