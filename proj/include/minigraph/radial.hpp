#pragma once

#include "minigraph/harmonic.hpp"
#include "minigraph/metric.hpp"
#include "minigraph/numerics.hpp"

namespace minigraph {

enum class ProfileKind { conformal, catenoidal, helicoidal };  // c = 0 / c < 0 / c > 0

// Radial harmonic-map profile p(s) with Hopf constant c, normalized p(1) = 1.
// p is strictly increasing on [s_min, s_max]; p' is recovered from the first
// integral p^2 - (s p')^2 = -4c / rho(p)^2, so the identity holds by
// construction wherever the profile is admissible.
class RadialProfile {
public:
    RadialProfile() = default;

    double c() const { return c_; }
    ProfileKind kind() const { return kind_; }
    const MetricField& metric() const { return metric_; }
    double s_min() const { return s_min_; }
    double s_max() const { return s_max_; }

    double p(double s) const;
    double p_prime(double s) const;
    double p_second(double s) const;

    // inverse of p (the domain radius over a target radius)
    double s_of_t(double t) const;

    // residual of the first integral at s (should vanish identically)
    double hopf_identity_residual(double s) const;

    // c recovered from p, p' at s via rho^2 ((s p')^2 - p^2) / 4
    double hopf_constant_check(double s) const;

private:
    friend RadialProfile solve_profile(const MetricField&, double, double, double);
    double c_ = 0.0;
    ProfileKind kind_ = ProfileKind::conformal;
    MetricField metric_;
    double s_min_ = 0.0, s_max_ = 0.0;
    CubicHermite interp_;  // t(v), v = log s
};

// 4c + (t rho(t))^2; admissibility requires this to stay >= 0 on the path.
double admissibility(const RadialMetric& metric, double c, double t);

// Domain radius s over the target radius t:
// s = exp( int_1^t rho(y) / sqrt(4c + y^2 rho^2(y)) dy ).
// Throws AdmissibilityError when the integrand leaves the real axis.
double forward_modulus(const RadialMetric& metric, double c, double t);

// Target radius where the admissibility expression vanishes (c < 0 only);
// returns 0 when there is none below t = 1.
double turning_radius(const RadialMetric& metric, double c);

// Integrate the profile ODE dt/dv = sqrt(4c + t^2 rho^2) / rho, t(v=0) = 1,
// over s in [s_min, s_max]. Throws TurningPointError when the square root
// hits zero inside the requested range.
RadialProfile solve_profile(const MetricField& metric, double c, double s_min,
                            double s_max);

// Hopf constant reproducing the boundary condition
// r = exp( int_1^R rho / sqrt(4c + y^2 rho^2) dy ), 0 < r, R < 1,
// by bisection over the admissible interval. Throws NoSolutionError with the
// attainable r-range when r is not reachable.
double solve_c(const RadialMetric& metric, double r, double R);

// The sampled map f(s e^{i theta}) = p(s) e^{i theta} with analytic closures
// f_z = (p' + p/s)/2, f_zbar = e^{2 i theta} (p' - p/s)/2 and the matching
// f_zzbar, so downstream diagnostics are exact.
HarmonicMapCandidate radial_map(const RadialProfile& profile, const PolarGrid& grid);

}  // namespace minigraph
