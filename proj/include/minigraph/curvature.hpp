#pragma once

#include <functional>

#include "minigraph/surface.hpp"

namespace minigraph {

// Terms of the curvature split at one node. lambda is always computed from
// p^2(f)(|f_z| + |f_zbar|)^2; the (mu + 1/mu)^2 |eta|^2 / 4 evaluation is kept
// as lambda_alt for cross-checks only.
struct CurvatureDecomposition {
    double lambda = 0.0;
    double lambda_alt = 0.0;
    double mu = 0.0;
    double m = 0.0;
    double A = 0.0;  // |grad m|^2
    double X = 0.0;  // 2 K_p J
    double B = 0.0;  // 4 |grad mu|^2
    double J = 0.0;
    double K_metric = 0.0;
    double K = 0.0;        // (-2A + X mu^2 (1 - mu^4)) / (2 lambda mu^2 (1 + mu^2)^2)
    double K_split = 0.0;  // -A/(lambda mu^2 (1+mu^2)^2) + K_p J (1-mu^4)/(lambda (1+mu^2)^2)
    bool defined = false;  // false when mu is 0 or 1 at the node
};

// K = -Delta log(lambda) / (2 lambda) with grid stencils on the sampled
// conformal factor. Throws StencilError off the interior and
// std::domain_error when lambda vanishes in the stencil.
double surface_curvature_numeric(const ConformalImmersion& imm, int i, int j);

// Fills the decomposition; gradients of m and mu come from the profile when
// the immersion is profile-backed, else from centered grid stencils.
CurvatureDecomposition curvature_decomposition(const ConformalImmersion& imm, int i, int j);

// Rotationally symmetric closed forms at target radius t:
//   c < 0: K = 4c (rho + t rho')^2 / (t^4 rho^6) + K_p (1 + 4c/(t^2 rho^2))
//   c > 0: K = -4c (rho + t rho')^2 / (4c rho + t^2 rho^3)^2 + K_p t^2 rho^2/(4c + t^2 rho^2)
//   c = 0: K = K_p(t)
double curvature_radial_closed_form(const RadialProfile& profile, double t);

// Flat-metric analytic route K = -|omega'|^2 / (|f_z fbar_z| (1 + |omega|)^4)
// with |f_z fbar_z| = |c| / |z|^2 for the second dilatation omega = q^2.
double curvature_euclidean_analytic(const std::function<cplx(cplx)>& omega,
                                    const std::function<cplx(cplx)>& omega_prime,
                                    double hopf_c, cplx z);

struct KalBound {
    double K_abs = 0.0;
    double bound = 0.0;   // max(B/lambda, |K_p - B/lambda|)
    double margin = 0.0;  // bound - K_abs
};

KalBound kal_bound_check(const ConformalImmersion& imm, int i, int j);

}  // namespace minigraph
