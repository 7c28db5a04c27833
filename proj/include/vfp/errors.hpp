#pragma once

#include <stdexcept>
#include <string>

namespace vfp {

// Invalid user-facing input: bad config values, malformed grids, unknown names.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A right-hand side handed to a kernel-constrained solve had a component in
// the kernel direction above tolerance.
class SolvabilityError : public std::runtime_error {
public:
    SolvabilityError(const std::string& what, double kernel_component)
        : std::runtime_error(what), kernel_component(kernel_component) {}
    double kernel_component;
};

// An iterative solver ran out of its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations, double residual)
        : std::runtime_error(what), iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

// A reconstructed distribution function failed a positivity requirement.
class PositivityError : public std::runtime_error {
public:
    PositivityError(const std::string& what, double min_value)
        : std::runtime_error(what), min_value(min_value) {}
    double min_value;
};

// The time integration produced a non-finite state.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double time)
        : std::runtime_error(what), time(time) {}
    double time;
};

// A direct numerical kernel (eigensolve, linear solve) failed its own
// backward-error check.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vfp
