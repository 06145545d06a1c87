#include "minigraph/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include "minigraph/errors.hpp"

namespace minigraph {

double integrate(const Fn1& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double error = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, tol, &error);
    if (!std::isfinite(v)) {
        throw NumericError("quadrature returned non-finite value on [" +
                           std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    // boost's estimate is conservative; only genuine stagnation should trip
    if (error > 1e-5 * std::max(1.0, std::abs(v))) {
        throw NumericError("quadrature did not converge: error estimate " +
                           std::to_string(error) + " on [" + std::to_string(a) +
                           ", " + std::to_string(b) + "]");
    }
    return v;
}

double integrate_singular(const Fn1& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    boost::math::quadrature::tanh_sinh<double> quad;
    double error = 0.0, l1 = 0.0;
    double v = quad.integrate(f, a, b, tol, &error, &l1);
    if (!std::isfinite(v)) {
        throw NumericError("singular quadrature returned non-finite value on [" +
                           std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    return sign * v;
}

OdeSolution integrate_ode(const std::function<double(double, double)>& rhs,
                          double y0, double x0, double x1, int n_out,
                          double abs_tol, double rel_tol) {
    namespace odeint = boost::numeric::odeint;
    using state = double;
    if (n_out < 1) throw std::invalid_argument("integrate_ode: n_out must be >= 1");

    OdeSolution out;
    out.x.reserve(n_out + 1);
    out.y.reserve(n_out + 1);

    auto sys = [&rhs](const state& y, state& dydx, double x) { dydx = rhs(x, y); };
    auto stepper = odeint::make_controlled(
        abs_tol, rel_tol, odeint::runge_kutta_cash_karp54<state>());

    state y = y0;
    double dx = (x1 - x0) / n_out;
    auto observer = [&out](const state& yv, double xv) {
        out.x.push_back(xv);
        out.y.push_back(yv);
    };
    try {
        odeint::integrate_const(stepper, sys, y, x0, x1 + 0.5 * dx, dx, observer);
    } catch (const std::exception& e) {
        throw NumericError(std::string("ODE integration failed: ") + e.what());
    }
    if (out.x.size() < static_cast<std::size_t>(n_out + 1)) {
        throw NumericError("ODE integration terminated early at x = " +
                           std::to_string(out.x.empty() ? x0 : out.x.back()));
    }
    out.dy.resize(out.x.size());
    for (std::size_t i = 0; i < out.x.size(); ++i) out.dy[i] = rhs(out.x[i], out.y[i]);
    return out;
}

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y,
                           std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
    if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != dy_.size())
        throw std::invalid_argument("CubicHermite: need >= 2 consistent knots");
    bool inc = x_.back() > x_.front();
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if ((inc && x_[i] <= x_[i - 1]) || (!inc && x_[i] >= x_[i - 1]))
            throw std::invalid_argument("CubicHermite: knots must be strictly monotone");
    }
    if (!inc) {  // store increasing
        std::reverse(x_.begin(), x_.end());
        std::reverse(y_.begin(), y_.end());
        std::reverse(dy_.begin(), dy_.end());
    }
}

std::size_t CubicHermite::segment(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin() - 1);
    return std::min(i, x_.size() - 2);
}

double CubicHermite::operator()(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * dy_[i] + h01 * y_[i + 1] + h * h11 * dy_[i + 1];
}

double CubicHermite::prime(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t;
    double d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1;
    double d01 = (-6 * t2 + 6 * t) / h, d11 = 3 * t2 - 2 * t;
    return d00 * y_[i] + d10 * dy_[i] + d01 * y_[i + 1] + d11 * dy_[i + 1];
}

NaturalSpline::NaturalSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw std::invalid_argument("NaturalSpline: need >= 3 consistent knots");
    for (std::size_t i = 1; i < n; ++i)
        if (x_[i] <= x_[i - 1])
            throw std::invalid_argument("NaturalSpline: knots must be increasing");

    // Tridiagonal solve for interior second derivatives, natural ends.
    m_.assign(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
        a[i] = hl / 6.0;
        b[i] = (hl + hr) / 3.0;
        c[i] = hr / 6.0;
        d[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (d[i] - c[i] * (i + 2 < n ? m_[i + 1] : 0.0)) / b[i];
        if (i == 1) break;
    }
}

std::size_t NaturalSpline::segment(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin() - 1);
    return std::min(i, x_.size() - 2);
}

double NaturalSpline::operator()(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double NaturalSpline::prime(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3 * B * B - 1) * m_[i + 1] - (3 * A * A - 1) * m_[i]) * h / 6.0;
}

double NaturalSpline::second(double x) const {
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return A * m_[i] + B * m_[i + 1];
}

double bisect(const Fn1& f, double lo, double hi, double x_tol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw NumericError("bisect: endpoints do not bracket a root on [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    for (int it = 0; it < max_iter && (hi - lo) > x_tol * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double minimize_scalar(const Fn1& f, double lo, double hi, double x_tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol * std::max(1.0, std::abs(a))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need >= 2 consistent samples");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw NumericError("fit_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace minigraph
