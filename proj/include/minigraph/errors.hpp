#pragma once

#include <stdexcept>
#include <string>

namespace minigraph {

// Quadrature / ODE / iteration failure; diagnostics go in what().
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite-difference stencil does not fit at the requested node.
struct StencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 4c + y^2 rho^2(y) < 0 somewhere on the integration path.
struct AdmissibilityError : std::domain_error {
    AdmissibilityError(const std::string& msg, double y)
        : std::domain_error(msg), violating_y(y) {}
    double violating_y;
};

// The profile square root hit zero in the interior of the requested range:
// the surface ceases to be a graph of s there.
struct TurningPointError : std::runtime_error {
    TurningPointError(const std::string& msg, double s, double t)
        : std::runtime_error(msg), s_reached(s), t_reached(t) {}
    double s_reached;
    double t_reached;
};

// No admissible parameter reproduces the requested boundary data.
// Carries the attainable range so callers can report it.
struct NoSolutionError : std::runtime_error {
    NoSolutionError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), attainable_lo(lo), attainable_hi(hi) {}
    double attainable_lo;
    double attainable_hi;
};

}  // namespace minigraph
