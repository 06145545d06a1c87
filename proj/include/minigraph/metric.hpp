#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "minigraph/numerics.hpp"

namespace minigraph {

using cplx = std::complex<double>;

// Radial conformal factor rho(t), t = |w| >= 0, with optional analytic
// derivatives. Positive and twice differentiable on the working interval.
struct RadialMetric {
    std::function<double(double)> rho;
    std::function<double(double)> rho_prime;   // optional (may be null)
    std::function<double(double)> rho_second;  // optional (may be null)
    double t_max = std::numeric_limits<double>::infinity();  // open upper end of validity
    double fd_step = 1e-4;  // relative step for the finite-difference fallback

    double eval(double t) const;           // checked: throws std::domain_error if rho <= 0
    double d_log_rho(double t) const;      // (log rho)'  (analytic or centered FD)
    double d2_log_rho(double t) const;     // (log rho)'' (analytic or centered FD)
    double deriv(double t) const;          // rho'        (analytic or centered FD)
    double second(double t) const;         // rho''       (analytic or centered FD)
};

// Tabulated radial metric from (t, rho) samples; C2 by natural cubic spline.
RadialMetric radial_metric_from_samples(const std::vector<double>& t,
                                        const std::vector<double>& rho);

// Conformal metric p on a planar domain. Kind tags which evaluation path
// curvature and derivatives take.
class MetricField {
public:
    enum class Kind { euclidean, radial, sampled };

    static MetricField euclidean();
    static MetricField radial(RadialMetric m, std::function<double(double)> curvature = nullptr);
    // Sampled on a log-polar grid, interpolated bicubically (Catmull-Rom).
    static MetricField sampled(double r_in, double r_out, int n_u, int n_theta,
                               std::vector<double> values);

    Kind kind() const { return kind_; }

    // p(w) > 0; throws std::domain_error at invalid points.
    double value(cplx w) const;
    // Wirtinger derivative d/dw of log p (analytic when available, else FD).
    cplx log_gradient(cplx w) const;
    // Gauss curvature of the metric at w.
    double curvature(cplx w) const;
    bool has_analytic_curvature() const { return static_cast<bool>(curvature_fn_); }

    // Radial access; throws std::logic_error when the metric is not radial.
    const RadialMetric& radial_part() const;
    bool is_radial() const { return kind_ != Kind::sampled; }

    // Finite-difference step scale (relative); default 1e-4 of local scale.
    double fd_step() const { return fd_step_; }
    void set_fd_step(double h);

    // sup |K| sampled on n radii of [t_lo, t_hi] (radial metrics).
    double curvature_sup(double t_lo, double t_hi, int n = 257) const;

private:
    Kind kind_ = Kind::euclidean;
    std::shared_ptr<RadialMetric> radial_;
    std::function<double(double)> curvature_fn_;  // radial analytic curvature K(t)
    double fd_step_ = 1e-4;

    // sampled-kind storage
    struct Sampled;
    std::shared_ptr<Sampled> sampled_;
};

// K_p(w) = -(Delta log p)(w) / p(w)^2.
double gauss_curvature(const MetricField& metric, cplx w);

// The metric R * p; curvature scales as K / R^2. Throws std::invalid_argument
// for R <= 0.
MetricField metric_scale(const MetricField& metric, double R);

// Integral of rho along a radius: the p-distance from the origin to |w| = t.
double geodesic_distance_radial(const RadialMetric& metric, double t);

// Integral of p^2 over the annulus r_in < |w| < r_out.
double metric_area(const MetricField& metric, double r_in, double r_out);

// Built-in names: euclidean | sphere | hyperbolic | power:<k> | cigar:<a>,
// or csv:<path> for a two-column (t, rho) table.
MetricField parse_metric(const std::string& name);

}  // namespace minigraph
