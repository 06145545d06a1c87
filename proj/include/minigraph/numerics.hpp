#pragma once

#include <functional>
#include <vector>

namespace minigraph {

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod quadrature for smooth integrands.
double integrate(const Fn1& f, double a, double b, double tol = 1e-12);

// tanh-sinh quadrature; tolerates integrable endpoint singularities such as
// (y - y*)^(-1/2) at either limit.
double integrate_singular(const Fn1& f, double a, double b, double tol = 1e-12);

// Adaptive Cash-Karp 5(4) integration of dy/dx = rhs(x, y) from x0 to x1,
// observed on a uniform output mesh of n_out+1 points (x1 may be < x0).
struct OdeSolution {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> dy;  // rhs evaluated at the output nodes
};
OdeSolution integrate_ode(const std::function<double(double, double)>& rhs,
                          double y0, double x0, double x1, int n_out,
                          double abs_tol = 1e-12, double rel_tol = 1e-12);

// Piecewise cubic Hermite interpolant on strictly monotone knots.
class CubicHermite {
public:
    CubicHermite() = default;
    CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dy);
    double operator()(double x) const;
    double prime(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::size_t segment(double x) const;
    std::vector<double> x_, y_, dy_;
};

// Natural cubic spline through (x, y); C2, used for tabulated radial metrics.
class NaturalSpline {
public:
    NaturalSpline() = default;
    NaturalSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double prime(double x) const;
    double second(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::size_t segment(double x) const;
    std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

// Bisection for a root of f on [lo, hi]; f(lo), f(hi) must bracket.
double bisect(const Fn1& f, double lo, double hi, double x_tol = 1e-14,
              int max_iter = 200);

// Golden-section minimum of f on [lo, hi].
double minimize_scalar(const Fn1& f, double lo, double hi, double x_tol = 1e-10);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace minigraph
