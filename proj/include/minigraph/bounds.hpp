#pragma once

#include <map>
#include <string>
#include <vector>

#include "minigraph/curvature.hpp"
#include "minigraph/harmonic.hpp"
#include "minigraph/surface.hpp"

namespace minigraph {

struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs, recorded exactly as evaluated
    std::string witness;
    std::map<std::string, double> params;
    bool hypothesis_ok = true;
};

// Flat-case (kappa = 0) constants with their sources pinned at construction.
struct FlatConstants {
    static constexpr double pi = 3.14159265358979323846;
    static constexpr double phi0_slope_origin = 4.0 / pi;  // phi0'(0)
    static constexpr double phi0_slope_one = 2.0 / pi;     // phi0'(1-)
    static constexpr double heinz_c0 = 4.0 / pi;           // C_0
    static constexpr double c_tilde_0 = 1.0 / pi;          // (1/2) phi0'(1-)
    static constexpr double c_star_0 = 8.0 / pi;           // C*_0
};

// phi0(r) = (4/pi) arctan r on [0, 1].
double phi_flat(double r);

// c = -d^2 / (4 Mod(Sigma)^2).
double c_from_geometry(double d, double mod_sigma);

// Schwarz-Pick on the annulus A(1/R, R):
// |omega'(z)| <= pi (1 - |omega|^2) sec(pi log|z| / (2 log R)) / (4 |z| log R).
BoundReport annulus_schwarz_pick(const std::function<cplx(cplx)>& omega,
                                 const std::function<cplx(cplx)>& omega_prime, double R,
                                 cplx z);

// max |K| over the grid rows nearest u = equator_u against pi^2 / d^2.
// Flags the report when the interior leaves the graph regime (mu >= 1).
BoundReport equator_bound_report(const ConformalImmersion& imm, double d,
                                 double equator_u = 0.0);

// Conservative flat instance of the disk curvature estimate:
// rhs = 4 C*_0 / (R^2 c~_0^2) = 32 pi / R^2.
BoundReport finn_osserman_flat_report(double R, double K_at_center);

// min over nodes of |df| against the flat floor 1/pi.
BoundReport heinz_margin(const HarmonicMapCandidate& cand);

// Deterministic verification sweeps (parameter lattices are fixed).
std::vector<BoundReport> suite_equator(int n_u, int n_theta);
std::vector<BoundReport> suite_schwarzpick();
std::vector<BoundReport> suite_heinz(int n_u, int n_theta);
std::vector<BoundReport> suite_flux(int n_u, int n_theta);
std::vector<BoundReport> suite_bochner(int n_u, int n_theta);

// name in {equator, schwarzpick, heinz, flux, bochner, all}; throws
// std::invalid_argument otherwise.
std::vector<BoundReport> run_suite(const std::string& name, int n_u, int n_theta);

// Catenoid piece v in [v1, v1 + d] of the standard catenoid (c = -1/4),
// parametrized over A(e^{v1}, e^{v1+d}) with the equator at u = v1 + d/2.
ConformalImmersion catenoid_piece(double v1, double d, int n_u, int n_theta);

}  // namespace minigraph
