#include "minigraph/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "minigraph/errors.hpp"

namespace minigraph {

double admissibility(const RadialMetric& metric, double c, double t) {
    double tr = t * metric.eval(t);
    return 4.0 * c + tr * tr;
}

namespace {

// Minimum of the admissibility expression over [lo, hi] (coarse scan + golden).
std::pair<double, double> admissibility_min(const RadialMetric& metric, double c, double lo,
                                            double hi) {
    const int n = 128;
    double best_y = lo, best = admissibility(metric, c, lo);
    for (int i = 1; i <= n; ++i) {
        double y = lo + (hi - lo) * i / n;
        double v = admissibility(metric, c, y);
        if (v < best) {
            best = v;
            best_y = y;
        }
    }
    double a = std::max(lo, best_y - (hi - lo) / n);
    double b = std::min(hi, best_y + (hi - lo) / n);
    double y_star = minimize_scalar(
        [&](double y) { return admissibility(metric, c, y); }, a, b, 1e-12);
    double v_star = admissibility(metric, c, y_star);
    if (v_star < best) return {y_star, v_star};
    return {best_y, best};
}

}  // namespace

namespace {

double admissibility_deriv(const RadialMetric& rm, double y) {
    // d/dy (y rho)^2 = 2 y rho (rho + y rho')
    double r = rm.eval(y), dr = rm.deriv(y);
    return 2.0 * y * r * (r + y * dr);
}

double admissibility_second(const RadialMetric& rm, double y) {
    // d^2/dy^2 (y rho)^2 = 2 [(rho + y rho')^2 + y rho (2 rho' + y rho'')]
    double r = rm.eval(y), dr = rm.deriv(y), ddr = rm.second(y);
    double a = r + y * dr;
    return 2.0 * (a * a + y * r * (2.0 * dr + y * ddr));
}

// Substituted half-integral near a root t* of g: integrate
// 2 rho(y) / sqrt(g(y)/tau^2) over tau in [tau0, tau1], y = t* + dir tau^2.
// g/tau^2 switches to its Taylor form dir g' + g'' tau^2 / 2 at small tau,
// where the direct evaluation of g cancels catastrophically.
double sqrt_sub_integral(const RadialMetric& rm, double c, double t_star, double dir,
                         double tau0, double tau1) {
    if (tau1 <= tau0) return 0.0;
    double gp = admissibility_deriv(rm, t_star);
    double gpp = admissibility_second(rm, t_star);
    return integrate(
        [&, gp, gpp](double tau) {
            double y = t_star + dir * tau * tau;
            double G;
            if (tau < 1e-2) {
                G = dir * gp + 0.5 * gpp * tau * tau;
            } else {
                G = admissibility(rm, c, y) / (tau * tau);
            }
            if (!(G > 0.0)) G = std::abs(dir * gp);
            return 2.0 * rm.eval(y) / std::sqrt(G);
        },
        tau0, tau1, 1e-13);
}

// Integral of rho / sqrt(g) over [a, b] with g = 4c + y^2 rho^2 >= 0.
// A root of g within ~1e-3 of either endpoint gets the square-root
// substitution above, which keeps the quadrature accurate where the
// catenoid neck degenerates.
double log_modulus_integral(const RadialMetric& rm, double c, double a, double b) {
    if (a == b) return 0.0;
    auto g = [&](double y) { return admissibility(rm, c, y); };
    auto plain = [&](double y) {
        double gy = g(y);
        if (gy <= 0.0) return 0.0;
        return rm.eval(y) / std::sqrt(gy);
    };

    const double window = 1e-3 * std::max(1.0, std::abs(a) + std::abs(b));
    double cut_lo = a, cut_hi = b;
    double head = 0.0, tail_end = 0.0;

    // left endpoint: look for a root of g at or just below a
    if (g(a) < std::abs(admissibility_deriv(rm, a)) * window) {
        double lo_br = std::max(1e-12, a - window);
        double t_star = (g(lo_br) < 0.0)
                            ? bisect([&](double y) { return g(y); }, lo_br, a, 1e-16, 300)
                            : (g(a) <= 0.0 ? a : -1.0);
        if (t_star >= 0.0) {
            cut_lo = std::min(b, t_star + window);
            head = sqrt_sub_integral(rm, c, t_star, +1.0,
                                     std::sqrt(std::max(0.0, a - t_star)),
                                     std::sqrt(cut_lo - t_star));
        }
    }
    // right endpoint: root of g at or just above b
    if (cut_lo < b && g(b) < std::abs(admissibility_deriv(rm, b)) * window) {
        double hi_br = b + window;
        double t_star = (g(hi_br) < 0.0)
                            ? bisect([&](double y) { return g(y); }, b, hi_br, 1e-16, 300)
                            : (g(b) <= 0.0 ? b : -1.0);
        if (t_star >= 0.0) {
            cut_hi = std::max(cut_lo, t_star - window);
            tail_end = sqrt_sub_integral(rm, c, t_star, -1.0,
                                         std::sqrt(std::max(0.0, t_star - b)),
                                         std::sqrt(t_star - cut_hi));
        }
    }
    double mid = (cut_hi > cut_lo) ? integrate(plain, cut_lo, cut_hi, 1e-13) : 0.0;
    return head + mid + tail_end;
}

}  // namespace

double forward_modulus(const RadialMetric& metric, double c, double t) {
    if (!(t > 0.0)) throw std::domain_error("forward_modulus: target radius must be positive");
    if (t == 1.0) return 1.0;
    if (c == 0.0) return t;  // integrand rho / (y rho) = 1/y
    double lo = std::min(1.0, t), hi = std::max(1.0, t);
    auto [y_bad, g_min] = admissibility_min(metric, c, lo, hi);
    if (g_min < -1e-13)
        throw AdmissibilityError("4c + y^2 rho^2(y) < 0 at y = " + std::to_string(y_bad) +
                                     " (value " + std::to_string(g_min) + ")",
                                 y_bad);
    double v = log_modulus_integral(metric, c, lo, hi);
    return std::exp(t > 1.0 ? v : -v);
}

double turning_radius(const RadialMetric& metric, double c) {
    if (c >= 0.0) return 0.0;
    if (admissibility(metric, c, 1.0) < 0.0)
        throw AdmissibilityError("admissibility fails already at t = 1", 1.0);
    // scan downward from 1 for the first sign change
    double prev = 1.0;
    for (int k = 1; k <= 400; ++k) {
        double t = std::pow(10.0, -3.0 * k / 400.0);  // down to 1e-3
        if (admissibility(metric, c, t) < 0.0) {
            return bisect([&](double y) { return admissibility(metric, c, y); }, t, prev,
                          1e-15);
        }
        prev = t;
    }
    return 0.0;
}

RadialProfile solve_profile(const MetricField& metric, double c, double s_min, double s_max) {
    if (!metric.is_radial())
        throw std::invalid_argument("solve_profile: radial metric required");
    if (!(0 < s_min && s_min <= 1.0 && 1.0 <= s_max && s_min < s_max))
        throw std::invalid_argument("solve_profile: range must satisfy 0 < s_min <= 1 <= s_max");
    const RadialMetric& rm = metric.radial_part();

    RadialProfile prof;
    prof.c_ = c;
    prof.kind_ = c == 0.0 ? ProfileKind::conformal
                          : (c < 0.0 ? ProfileKind::catenoidal : ProfileKind::helicoidal);
    prof.metric_ = metric;
    prof.s_min_ = s_min;
    prof.s_max_ = s_max;

    double v_lo = std::log(s_min), v_hi = std::log(s_max);
    if (c == 0.0) {
        // p(s) = s for every radial metric
        std::vector<double> vs = {v_lo, 0.5 * (v_lo + v_hi), v_hi};
        std::vector<double> ts, dts;
        if (v_lo == 0.0) vs = {0.0, 0.5 * v_hi, v_hi};
        for (double v : vs) {
            ts.push_back(std::exp(v));
            dts.push_back(std::exp(v));
        }
        prof.interp_ = CubicHermite(vs, ts, dts);
        return prof;
    }

    auto rhs = [&rm, c](double /*v*/, double t) {
        double g = admissibility(rm, c, t);
        if (g < 0.0) g = 0.0;
        return std::sqrt(g) / rm.eval(t);
    };

    // Inward reach is limited by the turning radius for c < 0.
    if (c < 0.0 && v_lo < 0.0) {
        double t_star = turning_radius(rm, c);
        if (t_star > 0.0) {
            double v_star = std::log(forward_modulus(rm, c, t_star));
            if (v_lo < v_star - 1e-12)
                throw TurningPointError(
                    "profile ceases to be a graph at s = " + std::to_string(std::exp(v_star)) +
                        " (t = " + std::to_string(t_star) + ") before reaching s_min",
                    std::exp(v_star), t_star);
        }
    }

    const double g1 = admissibility(rm, c, 1.0);
    if (g1 < -1e-13)
        throw AdmissibilityError("admissibility fails at the normalization point t = 1", 1.0);

    // Degenerate start: t = 1 is the turning point, where the ODE also admits
    // the spurious constant solution. Step off with the two-term series
    // t = 1 + A v^2 (1 + B v^2), A = g'/(4 rho^2), B = (2/3) A (g''/(4g') - rho'/rho).
    double v_start = 0.0, t_start = 1.0;
    const double g_scale = std::max(1.0, std::abs(4.0 * c));
    if (g1 < 1e-10 * g_scale) {
        if (v_lo < -1e-12)
            throw TurningPointError("s = 1 is already the turning point; no inward range", 1.0,
                                    1.0);
        if (v_hi > 0.0) {
            double rho0 = rm.eval(1.0), drho0 = rm.deriv(1.0), ddrho0 = rm.second(1.0);
            double gp = 2.0 * rho0 * (rho0 + drho0);
            if (!(gp > 0.0))
                throw NumericError("solve_profile: degenerate turning point at t = 1");
            double gpp = 2.0 * ((rho0 + drho0) * (rho0 + drho0) +
                                rho0 * (2.0 * drho0 + ddrho0));
            double A = gp / (4.0 * rho0 * rho0);
            double B = (2.0 / 3.0) * A * (gpp / (4.0 * gp) - drho0 / rho0);
            double v_h = std::min(0.02, 0.5 * v_hi);
            t_start = 1.0 + A * v_h * v_h * (1.0 + B * v_h * v_h);
            v_start = v_h;
        }
    }

    // collect knots: inward branch (v < v_start is only possible when regular
    // at 1, i.e. v_start == 0) and outward branch
    std::vector<double> vs, ts, dts;
    auto append = [&](const OdeSolution& sol, bool reversed) {
        std::size_t n = sol.x.size();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t i = reversed ? n - 1 - k : k;
            vs.push_back(sol.x[i]);
            ts.push_back(sol.y[i]);
            dts.push_back(sol.dy[i]);
        }
    };

    const double knot_h = 1.0 / 512.0;
    try {
        if (v_lo < v_start - 1e-15) {
            int n = std::max(8, static_cast<int>(std::ceil((v_start - v_lo) / knot_h)));
            OdeSolution sol = integrate_ode(rhs, t_start, v_start, v_lo, n, 1e-13, 1e-13);
            append(sol, true);
            vs.pop_back();  // drop duplicate v_start knot
            ts.pop_back();
            dts.pop_back();
        }
        if (v_hi > v_start + 1e-15) {
            int n = std::max(8, static_cast<int>(std::ceil((v_hi - v_start) / knot_h)));
            OdeSolution sol = integrate_ode(rhs, t_start, v_start, v_hi, n, 1e-13, 1e-13);
            append(sol, false);
        } else {
            vs.push_back(v_start);
            ts.push_back(t_start);
            dts.push_back(rhs(v_start, t_start));
        }
    } catch (const NumericError& e) {
        throw TurningPointError(std::string("profile integration stopped: ") + e.what(), 0.0,
                                0.0);
    }

    prof.interp_ = CubicHermite(vs, ts, dts);
    return prof;
}

double RadialProfile::p(double s) const {
    if (interp_.empty()) throw std::logic_error("RadialProfile: empty profile");
    double v = std::log(s);
    if (v < std::log(s_min_) - 1e-9 || v > std::log(s_max_) + 1e-9)
        throw std::domain_error("RadialProfile: s = " + std::to_string(s) +
                                " outside the profile range");
    return interp_(v);
}

double RadialProfile::p_prime(double s) const {
    // first-integral form: (s p')^2 = (4c + p^2 rho^2(p)) / rho^2(p), p' >= 0
    double t = p(s);
    const RadialMetric& rm = metric_.radial_part();
    double g = admissibility(rm, c_, t);
    if (g < 0.0) g = 0.0;
    return std::sqrt(g) / (s * rm.eval(t));
}

double RadialProfile::p_second(double s) const {
    // differentiated first integral; no p' division:
    // p'' = p/s^2 - p'/s + (rho'(p)/rho(p)) (p^2/s^2 - p'^2)
    double t = p(s), dp = p_prime(s);
    const RadialMetric& rm = metric_.radial_part();
    double lr = rm.d_log_rho(t);
    return t / (s * s) - dp / s + lr * (t * t / (s * s) - dp * dp);
}

double RadialProfile::s_of_t(double t) const {
    double t_lo = p(s_min_), t_hi = p(s_max_);
    if (t < t_lo - 1e-9 || t > t_hi + 1e-9)
        throw std::domain_error("RadialProfile: target radius " + std::to_string(t) +
                                " outside the profile image");
    double tc = std::clamp(t, t_lo, t_hi);
    double v = bisect([&](double vv) { return interp_(vv) - tc; }, std::log(s_min_),
                      std::log(s_max_), 1e-15);
    return std::exp(v);
}

double RadialProfile::hopf_identity_residual(double s) const {
    double t = p(s), dp = p_prime(s);
    double rho = metric_.radial_part().eval(t);
    return t * t - (s * dp) * (s * dp) + 4.0 * c_ / (rho * rho);
}

double RadialProfile::hopf_constant_check(double s) const {
    double t = p(s), dp = p_prime(s);
    double rho = metric_.radial_part().eval(t);
    return rho * rho * ((s * dp) * (s * dp) - t * t) / 4.0;
}

double solve_c(const RadialMetric& metric, double r, double R) {
    if (!(0 < r && r < 1 && 0 < R && R < 1))
        throw std::invalid_argument("solve_c: need 0 < r, R < 1");
    auto [y_min, g0_min] = admissibility_min(metric, 0.0, R, 1.0);
    (void)g0_min;
    double yr = y_min * metric.eval(y_min);
    double c_lo = -yr * yr / 4.0;  // admissibility limit
    double eps = std::max(1e-14, 1e-12 * std::abs(c_lo));

    auto r_of_c = [&](double c) { return forward_modulus(metric, c, R); };

    double r_floor;
    try {
        r_floor = r_of_c(c_lo + eps);
    } catch (const AdmissibilityError&) {
        r_floor = 0.0;
    }
    if (r <= r_floor)
        throw NoSolutionError("no admissible c reproduces r = " + std::to_string(r) +
                                  "; attainable range is (" + std::to_string(r_floor) + ", 1)",
                              r_floor, 1.0);
    double c_hi = std::max(1.0, -4.0 * c_lo);
    while (r_of_c(c_hi) < r) {
        c_hi *= 2.0;
        if (c_hi > 1e12)
            throw NoSolutionError("r = " + std::to_string(r) + " not attainable below c = 1e12",
                                  r_floor, 1.0);
    }
    return bisect([&](double c) { return r_of_c(c) - r; }, c_lo + eps, c_hi, 1e-14, 400);
}

HarmonicMapCandidate radial_map(const RadialProfile& profile, const PolarGrid& grid) {
    if (grid.r_in < profile.s_min() - 1e-12 || grid.r_out > profile.s_max() + 1e-12)
        throw std::domain_error("radial_map: grid radii outside the profile range");

    ComplexField f(grid, [&profile](cplx z) {
        double s = std::abs(z);
        return std::polar(profile.p(s), std::arg(z));
    });
    RadialProfile prof = profile;  // owned copy for the closures
    f.set_analytic(
        [prof](cplx z) {
            double s = std::abs(z);
            return cplx(0.5 * (prof.p_prime(s) + prof.p(s) / s), 0.0);
        },
        [prof](cplx z) {
            double s = std::abs(z);
            cplx e2 = (z / s) * (z / s);
            return e2 * 0.5 * (prof.p_prime(s) - prof.p(s) / s);
        },
        [prof](cplx z) {
            double s = std::abs(z);
            cplx e1 = z / s;
            double dp = prof.p_prime(s), t = prof.p(s);
            return e1 * 0.25 * (prof.p_second(s) + dp / s - t / (s * s));
        });
    double t_in = profile.p(grid.r_in), t_out = profile.p(grid.r_out);
    return HarmonicMapCandidate{std::move(f), profile.metric(), t_in, t_out};
}

}  // namespace minigraph
