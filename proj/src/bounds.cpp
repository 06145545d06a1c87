#include "minigraph/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minigraph/errors.hpp"
#include "minigraph/radial.hpp"

namespace minigraph {

double phi_flat(double r) {
    if (r < 0.0 || r > 1.0)
        throw std::invalid_argument("phi_flat: r must lie in [0, 1]");
    return (4.0 / FlatConstants::pi) * std::atan(r);
}

double c_from_geometry(double d, double mod_sigma) {
    if (!(d > 0.0) || !(mod_sigma > 0.0))
        throw std::invalid_argument("c_from_geometry: d and Mod must be positive");
    return -d * d / (4.0 * mod_sigma * mod_sigma);
}

BoundReport annulus_schwarz_pick(const std::function<cplx(cplx)>& omega,
                                 const std::function<cplx(cplx)>& omega_prime, double R,
                                 cplx z) {
    if (!(R > 1.0)) throw std::invalid_argument("annulus_schwarz_pick: R must exceed 1");
    double s = std::abs(z);
    if (!(s > 1.0 / R && s < R))
        throw std::invalid_argument("annulus_schwarz_pick: z outside A(1/R, R)");
    double om = std::abs(omega(z));
    if (!(om < 1.0))
        throw std::domain_error("annulus_schwarz_pick: |omega(z)| >= 1");
    BoundReport rep;
    rep.name = "schwarz_pick";
    rep.lhs = std::abs(omega_prime(z));
    double logR = std::log(R);
    double arg = FlatConstants::pi * std::log(s) / (2.0 * logR);
    double cosv = std::cos(arg);
    rep.rhs = (cosv <= 0.0) ? std::numeric_limits<double>::infinity()
                            : FlatConstants::pi * (1.0 - om * om) / (cosv * 4.0 * s * logR);
    rep.margin = rep.rhs - rep.lhs;
    rep.params["R"] = R;
    rep.params["abs_z"] = s;
    return rep;
}

BoundReport equator_bound_report(const ConformalImmersion& imm, double d, double equator_u) {
    if (!(d > 0.0)) throw std::invalid_argument("equator_bound_report: d must be positive");
    const PolarGrid& g = imm.grid();
    BoundReport rep;
    rep.name = "equator";
    rep.rhs = FlatConstants::pi * FlatConstants::pi / (d * d);
    rep.params["d"] = d;

    double du = g.du();
    double worst = 0.0;
    int wi = -1, wj = -1;
    for (int i = 1; i < g.n_u - 1; ++i) {
        if (std::abs(g.u(i) - equator_u) > 0.5 * du * (1.0 + 1e-9)) continue;
        for (int j = 0; j < g.n_theta; ++j) {
            double K = surface_curvature_numeric(imm, i, j);
            if (std::abs(K) > worst) {
                worst = std::abs(K);
                wi = i;
                wj = j;
            }
        }
    }
    if (wi < 0) throw std::invalid_argument("equator_bound_report: no grid row at the equator");
    rep.lhs = worst;
    rep.margin = rep.rhs - rep.lhs;
    rep.witness = "node (" + std::to_string(wi) + ", " + std::to_string(wj) + ")";

    // graph-regime hypothesis: interior dilatation stays below 1
    double mu_max = 0.0;
    for (int i = 1; i < g.n_u - 1; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            Dilatation dil = dilatation(imm.horizontal, i, j);
            mu_max = std::max(mu_max, dil.singular ? 2.0 : dil.mu);
        }
    rep.hypothesis_ok = mu_max < 1.0;
    rep.params["mu_max_interior"] = mu_max;
    return rep;
}

BoundReport finn_osserman_flat_report(double R, double K_at_center) {
    if (!(R > 0.0)) throw std::invalid_argument("finn_osserman_flat_report: R must be positive");
    BoundReport rep;
    rep.name = "finn_osserman_flat";
    rep.lhs = std::abs(K_at_center);
    // 4 C*_0 / (R^2 c~_0^2) with C*_0 = 8/pi and c~_0 = 1/pi
    rep.rhs = 32.0 * FlatConstants::pi / (R * R);
    rep.margin = rep.rhs - rep.lhs;
    rep.params["R"] = R;
    rep.witness = "conservative flat-case instance";
    return rep;
}

BoundReport heinz_margin(const HarmonicMapCandidate& cand) {
    const PolarGrid& g = cand.grid();
    BoundReport rep;
    rep.name = "heinz";
    rep.lhs = FlatConstants::c_tilde_0;
    double best = std::numeric_limits<double>::infinity();
    int wi = 0, wj = 0;
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            Dilatation dil = dilatation(cand, i, j);
            if (dil.dP < best) {
                best = dil.dP;
                wi = i;
                wj = j;
            }
        }
    rep.rhs = best;
    rep.margin = rep.rhs - rep.lhs;
    rep.witness = "node (" + std::to_string(wi) + ", " + std::to_string(wj) + ")";
    return rep;
}

ConformalImmersion catenoid_piece(double v1, double d, int n_u, int n_theta) {
    if (v1 < 0.0) throw std::invalid_argument("catenoid_piece: v1 must be >= 0");
    double v2 = v1 + d;
    RadialProfile prof = solve_profile(MetricField::euclidean(), -0.25, 1.0, std::exp(v2));
    PolarGrid grid(std::exp(v1), std::exp(v2), n_u, n_theta);
    return immersion_from_profile(prof, grid);
}

std::vector<BoundReport> suite_equator(int n_u, int n_theta) {
    std::vector<BoundReport> out;
    for (int a = 0; a < 9; ++a) {
        double v1 = 0.25 * a;
        for (int b = 0; b < 9; ++b) {
            double d = 0.5 + 0.5 * b;
            ConformalImmersion imm = catenoid_piece(v1, d, n_u, n_theta);
            BoundReport rep = equator_bound_report(imm, d, v1 + 0.5 * d);
            rep.name = "equator/v1=" + std::to_string(v1) + ",d=" + std::to_string(d);
            rep.params["v1"] = v1;
            double mod = std::log(imm.grid().r_out / imm.grid().r_in);
            rep.params["mod"] = mod;
            rep.params["c_stored"] = imm.c;
            rep.params["c_geom"] = c_from_geometry(d, mod);
            out.push_back(std::move(rep));
        }
    }
    return out;
}

namespace {

struct SpFamily {
    std::string name;
    std::function<cplx(cplx)> omega;
    std::function<cplx(cplx)> omega_prime;
};

std::vector<SpFamily> schwarz_pick_families(double R) {
    auto mobius = [](double a) {
        return std::pair(
            [a](cplx w) { return (w - a) / (1.0 - a * w); },
            [a](cplx w) {
                cplx d = 1.0 - a * w;
                return (1.0 - a * a) / (d * d);
            });
    };
    double R2 = R * R;
    SpFamily outer{"z^2/R^2", [R2](cplx z) { return z * z / R2; },
                   [R2](cplx z) { return 2.0 * z / R2; }};
    SpFamily inner{"1/(R^2 z^2)", [R2](cplx z) { return 1.0 / (R2 * z * z); },
                   [R2](cplx z) { return -2.0 / (R2 * z * z * z); }};
    auto [Ta, dTa] = mobius(0.3);
    auto [Tb, dTb] = mobius(-0.4);
    SpFamily prod{"blaschke_product",
                  [=](cplx z) { return Ta(outer.omega(z)) * Tb(inner.omega(z)); },
                  [=](cplx z) {
                      return dTa(outer.omega(z)) * outer.omega_prime(z) * Tb(inner.omega(z)) +
                             Ta(outer.omega(z)) * dTb(inner.omega(z)) * inner.omega_prime(z);
                  }};
    return {outer, inner, prod};
}

}  // namespace

std::vector<BoundReport> suite_schwarzpick() {
    const double R = 2.0;
    std::vector<BoundReport> out;
    for (const SpFamily& fam : schwarz_pick_families(R)) {
        BoundReport worst;
        worst.margin = std::numeric_limits<double>::infinity();
        int count = 0;
        for (int a = 0; a < 40; ++a) {
            double s = 1.0 / R + (R - 1.0 / R) * (a + 0.5) / 40.0;
            for (int b = 0; b < 25; ++b) {
                double th = 2.0 * FlatConstants::pi * b / 25.0;
                BoundReport rep =
                    annulus_schwarz_pick(fam.omega, fam.omega_prime, R, std::polar(s, th));
                ++count;
                if (rep.margin < worst.margin) {
                    worst = rep;
                    worst.witness = "z = " + std::to_string(s) + " e^{i " + std::to_string(th) +
                                    "}";
                }
            }
        }
        worst.name = "schwarzpick/" + fam.name;
        worst.params["samples"] = count;
        out.push_back(std::move(worst));
    }
    // sharpness of the outer family as |z| -> R and the inner family as |z| -> 1/R
    const SpFamily outer = schwarz_pick_families(R)[0];
    BoundReport so = annulus_schwarz_pick(outer.omega, outer.omega_prime, R, R - 1e-3);
    BoundReport sharp_outer;
    sharp_outer.name = "schwarzpick/sharpness_outer";
    sharp_outer.lhs = 0.99;
    sharp_outer.rhs = so.lhs / so.rhs;
    sharp_outer.margin = sharp_outer.rhs - sharp_outer.lhs;
    sharp_outer.params["abs_z"] = R - 1e-3;
    out.push_back(std::move(sharp_outer));

    const SpFamily inner = schwarz_pick_families(R)[1];
    BoundReport si = annulus_schwarz_pick(inner.omega, inner.omega_prime, R, 1.0 / R + 1e-3);
    BoundReport sharp_inner;
    sharp_inner.name = "schwarzpick/sharpness_inner";
    sharp_inner.lhs = 0.99;
    sharp_inner.rhs = si.lhs / si.rhs;
    sharp_inner.margin = sharp_inner.rhs - sharp_inner.lhs;
    sharp_inner.params["abs_z"] = 1.0 / R + 1e-3;
    out.push_back(std::move(sharp_inner));
    return out;
}

namespace {

HarmonicMapCandidate disk_candidate(int n_u, int n_theta,
                                    const std::function<cplx(cplx)>& f,
                                    const std::function<cplx(cplx)>& fz,
                                    const std::function<cplx(cplx)>& fzbar) {
    PolarGrid g(1e-3, 1.0, n_u, n_theta);
    ComplexField field(g, f);
    field.set_analytic(fz, fzbar);
    return HarmonicMapCandidate{std::move(field), MetricField::euclidean(), 0.0, 1.0};
}

}  // namespace

std::vector<BoundReport> suite_heinz(int n_u, int n_theta) {
    std::vector<BoundReport> out;
    {
        BoundReport rep = heinz_margin(disk_candidate(
            n_u, n_theta, [](cplx z) { return z; }, [](cplx) { return cplx(1.0, 0.0); },
            [](cplx) { return cplx(0.0, 0.0); }));
        rep.name = "heinz/identity";
        out.push_back(std::move(rep));
    }
    {
        const double a = 0.3;
        BoundReport rep = heinz_margin(disk_candidate(
            n_u, n_theta, [a](cplx z) { return (z - a) / (1.0 - a * z); },
            [a](cplx z) {
                cplx den = 1.0 - a * z;
                return (1.0 - a * a) / (den * den);
            },
            [](cplx) { return cplx(0.0, 0.0); }));
        rep.name = "heinz/mobius";
        rep.params["a"] = a;
        out.push_back(std::move(rep));
    }
    {
        BoundReport rep = heinz_margin(disk_candidate(
            n_u, n_theta, [](cplx z) { return z * (1.0 + 0.1 * std::norm(z)) / 1.1; },
            [](cplx z) { return cplx((1.0 + 0.2 * std::norm(z)) / 1.1, 0.0); },
            [](cplx z) { return 0.1 * z * z / 1.1; }));
        rep.name = "heinz/rescaled_diffeo";
        out.push_back(std::move(rep));
    }
    return out;
}

namespace {

struct FluxCase {
    std::string tag;
    MetricField metric;
    double c;
    double s_lo, s_hi;
};

std::vector<FluxCase> flux_cases() {
    std::vector<FluxCase> cases;
    cases.push_back({"euclidean_c=-0.25", MetricField::euclidean(), -0.25, std::exp(0.5),
                     std::exp(1.5)});
    cases.push_back({"euclidean_c=-0.09", MetricField::euclidean(), -0.09, 1.0, std::exp(1.0)});
    cases.push_back({"euclidean_c=-0.05", MetricField::euclidean(), -0.05, 1.0, std::exp(1.0)});
    cases.push_back({"sphere_c=-0.05", parse_metric("sphere"), -0.05, 1.0, std::exp(1.0)});
    return cases;
}

double order_from(double coarse, double fine) { return std::log2(coarse / fine); }

void push_order_reports(std::vector<BoundReport>& out, const std::string& stem, double order,
                        double lo, double hi) {
    BoundReport a;
    a.name = stem + "/order_low";
    a.lhs = lo;
    a.rhs = order;
    a.margin = a.rhs - a.lhs;
    out.push_back(a);
    BoundReport b;
    b.name = stem + "/order_high";
    b.lhs = order;
    b.rhs = hi;
    b.margin = b.rhs - b.lhs;
    out.push_back(b);
}

}  // namespace

std::vector<BoundReport> suite_flux(int n_u, int n_theta) {
    std::vector<BoundReport> out;
    for (const FluxCase& fc : flux_cases()) {
        RadialProfile prof = solve_profile(fc.metric, fc.c, 1.0, fc.s_hi);
        double t_lo = prof.p(fc.s_lo), t_hi = prof.p(fc.s_hi);

        MinimalGraph g_exact =
            build_graph_radial(prof, 0.0, PolarGrid(t_lo, t_hi, n_u, n_theta));
        FluxIdentityReport exact = flux_identity_check(g_exact, fc.c);
        BoundReport rep;
        rep.name = "flux/defect/" + fc.tag;
        rep.lhs = exact.sup_defect;
        rep.rhs = 1e-8;
        rep.margin = rep.rhs - rep.lhs;
        rep.params["c"] = fc.c;
        out.push_back(std::move(rep));

        // finite-difference divergence order between two grids
        MinimalGraph g1 = g_exact;
        g1.omega_t = nullptr;
        MinimalGraph g2 =
            build_graph_radial(prof, 0.0, PolarGrid(t_lo, t_hi, 2 * n_u - 1, 2 * n_theta));
        g2.omega_t = nullptr;
        double d1 = flux_identity_check(g1, fc.c).sup_divergence;
        double d2 = flux_identity_check(g2, fc.c).sup_divergence;
        push_order_reports(out, "flux/divergence/" + fc.tag, order_from(d1, d2), 1.7, 2.3);
    }
    return out;
}

namespace {

double bochner_sup(const HarmonicMapCandidate& cand) {
    const PolarGrid& g = cand.grid();
    double sup = 0.0;
    double margin = 0.06 * (g.u_out() - g.u_in());  // resolution-independent window
    for (int i = 1; i < g.n_u - 1; ++i) {
        if (g.u(i) < g.u_in() + margin || g.u(i) > g.u_out() - margin) continue;
        for (int j = 0; j < g.n_theta; ++j) {
            BochnerDefect d = bochner_defect(cand, i, j);
            if (d.skipped) continue;
            sup = std::max({sup, std::abs(d.dP_defect), std::abs(d.dM_defect)});
        }
    }
    return sup;
}

}  // namespace

std::vector<BoundReport> suite_bochner(int n_u, int n_theta) {
    std::vector<BoundReport> out;
    {
        // flat catenoid: both Bochner logs are grid-exact harmonic fields
        RadialProfile prof =
            solve_profile(MetricField::euclidean(), -0.25, 1.0, std::exp(1.0));
        HarmonicMapCandidate cand =
            radial_map(prof, PolarGrid(1.0, std::exp(1.0), n_u, n_theta));
        BoundReport rep;
        rep.name = "bochner/flat_catenoid";
        rep.lhs = bochner_sup(cand);
        rep.rhs = 1e-6;  // grid-exact fields up to profile interpolation noise / du^2
        rep.margin = rep.rhs - rep.lhs;
        out.push_back(std::move(rep));
    }
    {
        // flat harmonic polynomial with nonconstant holomorphic and
        // antiholomorphic parts
        auto make = [](int nu, int nt) {
            PolarGrid g(0.2, 1.0, nu, nt);
            ComplexField f(g, [](cplx z) {
                cplx zb = std::conj(z);
                return 0.5 * z * z + 2.0 * z + 0.1 * zb * zb + 0.05 * zb * zb * zb;
            });
            f.set_analytic([](cplx z) { return z + 2.0; },
                           [](cplx z) {
                               cplx zb = std::conj(z);
                               return 0.2 * zb + 0.15 * zb * zb;
                           });
            return HarmonicMapCandidate{std::move(f), MetricField::euclidean(), 0.0, 10.0};
        };
        double s1 = bochner_sup(make(n_u, n_theta));
        double s2 = bochner_sup(make(2 * n_u - 1, 2 * n_theta));
        push_order_reports(out, "bochner/flat_poly", order_from(s1, s2), 1.7, 2.3);
    }
    {
        // spherical metric radial map: defect vanishes at stencil order
        MetricField sphere = parse_metric("sphere");
        RadialProfile prof = solve_profile(sphere, -0.09, 1.0, std::exp(1.0));
        auto sup_at = [&](int nu, int nt) {
            return bochner_sup(radial_map(prof, PolarGrid(1.0, std::exp(1.0), nu, nt)));
        };
        double s1 = sup_at(n_u, n_theta);
        double s2 = sup_at(2 * n_u - 1, 2 * n_theta);
        push_order_reports(out, "bochner/sphere_radial", order_from(s1, s2), 1.7, 2.3);
    }
    return out;
}

std::vector<BoundReport> run_suite(const std::string& name, int n_u, int n_theta) {
    if (name == "equator") return suite_equator(n_u, n_theta);
    if (name == "schwarzpick") return suite_schwarzpick();
    if (name == "heinz") return suite_heinz(n_u, n_theta);
    if (name == "flux") return suite_flux(n_u, n_theta);
    if (name == "bochner") return suite_bochner(n_u, n_theta);
    if (name == "all") {
        std::vector<BoundReport> out;
        for (const char* s : {"equator", "schwarzpick", "heinz", "flux", "bochner"}) {
            auto part = run_suite(s, n_u, n_theta);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace minigraph
