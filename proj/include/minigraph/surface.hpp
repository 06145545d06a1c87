#pragma once

#include <array>
#include <functional>
#include <memory>

#include "minigraph/harmonic.hpp"
#include "minigraph/radial.hpp"

namespace minigraph {

enum class SurfaceKind { catenoidal, helicoidal };

// Conformal parametrization chi = (f, h) of a surface in (Omega, p) x R.
// Catenoidal heights are h0 + 2 sqrt(-c) log|z|; helicoidal heights live on a
// single-valued theta chart (-pi, pi] with the branch seam at theta = pi.
struct ConformalImmersion {
    HarmonicMapCandidate horizontal;
    ScalarField height;
    double c = 0.0;
    SurfaceKind kind = SurfaceKind::catenoidal;
    double h0 = 0.0;
    std::shared_ptr<const RadialProfile> profile;  // set when profile-backed

    const PolarGrid& grid() const { return horizontal.grid(); }
    // analytic h_z: sqrt(-c)/z (catenoidal), -i sqrt(c)/z (helicoidal)
    cplx height_z(int i, int j) const;
};

ConformalImmersion immersion_from_profile(const RadialProfile& profile,
                                          const PolarGrid& grid, double h0 = 0.0);

// Height graph omega over a target-annulus grid.
struct MinimalGraph {
    PolarGrid grid;  // over the target annulus
    ScalarField omega;
    MetricField metric;
    double c = 0.0;
    bool degenerate = false;  // c = 0: flat sheet
    // analytic radial closure d omega / dt when built from a profile
    std::function<double(double)> omega_t;

    bool has_analytic() const { return static_cast<bool>(omega_t); }
};

// h(z) = d/2 + h0 + (d / log R^2) log|z| on A(1/R, R); equals h0 at |z| = 1/R
// and h0 + d at |z| = R. Throws std::invalid_argument for R <= 1 or d <= 0.
std::function<double(cplx)> height_function(double R, double d, double h0);

// omega(w) = C + 2 sqrt(-c) log|f^{-1}(w)| over the target annulus covered by
// the grid. c > 0 raises (multivalued height: use the helicoidal immersion);
// c = 0 returns the flat graph flagged degenerate.
MinimalGraph build_graph_radial(const RadialProfile& profile, double C,
                                const PolarGrid& target_grid);
// grid over the full image annulus of the profile
MinimalGraph build_graph_radial(const RadialProfile& profile, double C, int n_u,
                                int n_theta);

// N = grad(omega) / sqrt(1 + |grad omega|^2 / p^2) as N_x + i N_y.
cplx flux_field(const MinimalGraph& graph, int i, int j);

// div N at an interior node by second-order stencils (the minimal surface
// operator). Finite-difference flux needs a 2-ring; analytic needs a 1-ring.
double minimal_residual(const MinimalGraph& graph, int i, int j);

struct FluxIdentityReport {
    double sup_defect = 0.0;      // sup |N - 2 sqrt(-c)/conj(w)|
    double sup_divergence = 0.0;  // sup |div N| over the checkable interior
};

FluxIdentityReport flux_identity_check(const MinimalGraph& graph, double c);

// Integral of sqrt(p^2 + |grad omega|^2) over r_in < |w| < r_out.
double graph_area(const MinimalGraph& graph, double r_in, double r_out);

struct ConformalityDefect {
    double e_minus_g = 0.0;  // |chi_x|^2 - |chi_y|^2 in the product metric
    double cross = 0.0;      // <chi_x, chi_y>
};

ConformalityDefect conformality_defect(const ConformalImmersion& imm, int i, int j);

struct UnitNormal {
    double x = 0.0, y = 0.0, z = 0.0;
    bool vertical_limit = false;  // conj(f_z) = 0: N = (0, 0, +1) limit
};

// N = (2 Re F / p, 2 Im F / p, |F|^2 - 1) / (1 + |F|^2) with F^2 = -f_zbar /
// conj(f_z) (so |F| equals the dilatation mu); the branch of F is continued
// along the radial line from the outer boundary.
UnitNormal unit_normal(const ConformalImmersion& imm, int i, int j);

enum class TangentPlane { horizontal, vertical, tilted };

TangentPlane tangent_plane_classification(const ConformalImmersion& imm, int i, int j,
                                          double tol = 1e-6);

// The conjugate surface: swaps catenoidal c with helicoidal -c on the same
// grid and profile range.
ConformalImmersion conjugate_surface(const ConformalImmersion& imm);

}  // namespace minigraph
