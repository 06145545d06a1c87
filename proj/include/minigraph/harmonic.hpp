#pragma once

#include <complex>
#include <vector>

#include "minigraph/grid.hpp"
#include "minigraph/metric.hpp"

namespace minigraph {

// A map f from a log-polar annulus grid into a metric target annulus.
struct HarmonicMapCandidate {
    ComplexField f;
    MetricField metric;
    double target_in = 0.0;
    double target_out = 0.0;

    const PolarGrid& grid() const { return f.grid(); }
    // Pointwise containment |f| in [target_in - tol, target_out + tol].
    void validate(double tol = 1e-9) const;
};

struct EnergyReport {
    double energy = 0.0;
    double area_lower_bound = 0.0;        // 2 A(p) of the target annulus
    double antiholomorphic_excess = 0.0;  // 4 * integral of p^2 |f_zbar|^2
};

// p-Dirichlet energy by trapezoid in u, exact (uniform) sum in theta.
EnergyReport dirichlet_energy(const HarmonicMapCandidate& cand);

// Left side of the harmonic-map equation
// f_zzbar + (log p^2)_w(f) f_z f_zbar at a node; ~0 iff f is p-harmonic there.
cplx harmonic_residual(const HarmonicMapCandidate& cand, int i, int j);

// p^2(f) f_z conj(f_zbar).
cplx hopf_differential(const HarmonicMapCandidate& cand, int i, int j);

struct HopfFit {
    double c = 0.0;
    double relative_deviation = 0.0;  // max |z^2 Hopf - mean| / |mean|; inf sentinel
};

// Area-weighted mean of z^2 Hopf over interior nodes (boundary collar
// excluded) and the worst relative deviation from it.
HopfFit hopf_fit_c(const HarmonicMapCandidate& cand, int collar = 3);

struct Dilatation {
    double m = 0.0;   // |f_zbar / f_z|
    double mu = 0.0;  // sqrt(m)
    double J = 0.0;   // |df|^2 - |dbar f|^2 (metric-weighted)
    double dP = 0.0;  // |df|  = p(f) |f_z|
    double dM = 0.0;  // |dbar f| = p(f) |f_zbar|
    bool singular = false;  // f_z = 0: m and mu are not defined
};

Dilatation dilatation(const HarmonicMapCandidate& cand, int i, int j);

struct BochnerDefect {
    double dP_defect = 0.0;  // Delta log|df|   + K_p J
    double dM_defect = 0.0;  // Delta log|dbarf| - K_p J
    bool skipped = false;    // a zero of |df| or |dbar f| inside the stencil
};

BochnerDefect bochner_defect(const HarmonicMapCandidate& cand, int i, int j);

struct MuSchwarzReport {
    double max_ratio = 0.0;  // max over nodes of mu(z)/|z|
    int iu = 0, jt = 0;      // node attaining it
    double hopf_zero_order = 0.0;  // log-log slope over the innermost radii
    double fzbar_origin = 0.0;     // |f_zbar| extrapolated at the inner edge
    bool hypothesis_ok = false;    // Hopf zero order >= 2 (within fit slack)
    bool claim_holds = false;      // max_ratio <= 1 + tol
    bool claim_asserted = false;   // claim_holds and hypothesis_ok
};

// Dilatation Schwarz check mu(z) <= |z| on a disk-like grid.
MuSchwarzReport mu_schwarz_check(const HarmonicMapCandidate& cand, double tol = 1e-6);

struct SchwarzDistanceReport {
    double max_excess = 0.0;  // max of d_p(f(z), f(0)) - R phi0(|z|)
    double R = 0.0;           // geodesic radius used for the comparison
    int iu = 0, jt = 0;
    bool pass = false;
};

// Flat-constant distance Schwarz check d_p(f(z), origin) <= R (4/pi) atan|z|.
// R <= 0 means "use the tightest disk containing the image".
// Supported for the euclidean metric at any origin and for radial metrics
// with origin_image = 0.
SchwarzDistanceReport schwarz_distance_check(const HarmonicMapCandidate& cand,
                                             cplx origin_image, double R = 0.0,
                                             double tol = 1e-9);

// ---------------------------------------------------------------------------
// Discrete energy minimizer
// ---------------------------------------------------------------------------

struct MinimizeOptions {
    int max_sweeps = 100000;
    double tol_energy = 1e-10;  // relative energy decrease per sweep
    double tol_grad = 1e-6;     // sup-norm of the preconditioned gradient step
    double damping = 1.0;       // relaxation factor in (0, 1]
    double seed_rotation = 0.0; // initial rotation of the seed map
    int workers = 1;            // red-black sweeps partition rows when > 1
};

struct MinimizeResult {
    HarmonicMapCandidate candidate;
    bool converged = false;
    bool fold_warning = false;  // discrete Jacobian changed sign somewhere
    int sweeps = 0;
    double energy = 0.0;
    double final_step = 0.0;
    std::vector<double> energy_trace;  // energy after each sweep
};

// Damped nonlinear Gauss-Seidel on the discrete p-Dirichlet energy among grid
// maps sending the inner boundary to the inner target circle and the outer to
// the outer, boundary nodes sliding along their circles. Seed: radius affine
// in u, identity in theta.
MinimizeResult minimize_energy(const PolarGrid& domain, double target_in,
                               double target_out, const MetricField& metric,
                               const MinimizeOptions& opts = {});

}  // namespace minigraph
