#include "minigraph/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minigraph/errors.hpp"

namespace minigraph {

cplx ConformalImmersion::height_z(int i, int j) const {
    if (c == 0.0) return {0.0, 0.0};
    cplx z = grid().z(i, j);
    if (kind == SurfaceKind::catenoidal) return std::sqrt(-c) / z;
    return cplx(0.0, -1.0) * std::sqrt(c) / z;
}

ConformalImmersion immersion_from_profile(const RadialProfile& profile,
                                          const PolarGrid& grid, double h0) {
    HarmonicMapCandidate cand = radial_map(profile, grid);
    double c = profile.c();
    std::function<double(cplx)> hfn;
    SurfaceKind kind;
    if (c > 0.0) {
        kind = SurfaceKind::helicoidal;
        double rate = 2.0 * std::sqrt(c);
        hfn = [h0, rate](cplx z) {
            double th = std::arg(z);  // (-pi, pi] chart, seam at theta = pi
            return h0 + rate * th;
        };
    } else {
        kind = SurfaceKind::catenoidal;
        double rate = 2.0 * std::sqrt(-c);  // 0 when c = 0
        hfn = [h0, rate](cplx z) { return h0 + rate * std::log(std::abs(z)); };
    }
    ScalarField h(grid, hfn);
    ConformalImmersion imm{std::move(cand), std::move(h), c, kind, h0,
                           std::make_shared<RadialProfile>(profile)};
    return imm;
}

std::function<double(cplx)> height_function(double R, double d, double h0) {
    if (!(R > 1.0)) throw std::invalid_argument("height_function: R must exceed 1");
    if (!(d > 0.0)) throw std::invalid_argument("height_function: d must be positive");
    double slope = d / std::log(R * R);
    return [=](cplx z) { return 0.5 * d + h0 + slope * std::log(std::abs(z)); };
}

MinimalGraph build_graph_radial(const RadialProfile& profile, double C,
                                const PolarGrid& target_grid) {
    double c = profile.c();
    if (c > 0.0)
        throw std::invalid_argument(
            "build_graph_radial: c > 0 has multivalued height; use the helicoidal "
            "ConformalImmersion instead");
    MinimalGraph g{target_grid,
                   ScalarField(target_grid, [&](cplx w) {
                       if (c == 0.0) return C;
                       double s = profile.s_of_t(std::abs(w));
                       return C + 2.0 * std::sqrt(-c) * std::log(s);
                   }),
                   profile.metric(), c, c == 0.0, nullptr};
    if (c < 0.0) {
        RadialProfile prof = profile;
        double cc = c;
        // d omega/dt = 2 sqrt(-c) rho(t) / sqrt(4c + t^2 rho^2(t))
        g.omega_t = [prof, cc](double t) {
            const RadialMetric& rm = prof.metric().radial_part();
            double gg = admissibility(rm, cc, t);
            if (gg <= 0.0)
                throw std::domain_error("flux closure at the admissibility boundary");
            return 2.0 * std::sqrt(-cc) * rm.eval(t) / std::sqrt(gg);
        };
    } else {
        g.omega_t = [](double) { return 0.0; };
    }
    return g;
}

MinimalGraph build_graph_radial(const RadialProfile& profile, double C, int n_u,
                                int n_theta) {
    double t_lo = profile.p(profile.s_min());
    double t_hi = profile.p(profile.s_max());
    return build_graph_radial(profile, C, PolarGrid(t_lo, t_hi, n_u, n_theta));
}

namespace {

cplx grad_omega(const MinimalGraph& g, int i, int j) {
    if (g.has_analytic()) {
        cplx w = g.grid.z(i, j);
        double t = std::abs(w);
        return g.omega_t(t) * w / t;  // radial gradient
    }
    return g.omega.gradient(i, j);
}

cplx flux_from_grad(const MinimalGraph& g, int i, int j, cplx grad) {
    double p = g.metric.value(g.grid.z(i, j));
    return grad / std::sqrt(1.0 + std::norm(grad) / (p * p));
}

}  // namespace

cplx flux_field(const MinimalGraph& graph, int i, int j) {
    return flux_from_grad(graph, i, j, grad_omega(graph, i, j));
}

double minimal_residual(const MinimalGraph& graph, int i, int j) {
    const PolarGrid& g = graph.grid;
    int ring = graph.has_analytic() ? 1 : 2;
    if (i < ring || i > g.n_u - 1 - ring)
        throw StencilError("minimal_residual: node has no interior stencil");
    // div N = 2 Re d/dz N with a centered stencil on the flux samples
    auto N = [&](int ii, int jj) { return flux_field(graph, ii, jj); };
    double du = g.du(), dt = g.dtheta();
    cplx Nu = (N(i + 1, j) - N(i - 1, j)) / (2.0 * du);
    cplx Nt = (N(i, j + 1) - N(i, j - 1)) / (2.0 * dt);
    cplx Nz = 0.5 / g.z(i, j) * (Nu - cplx(0, 1) * Nt);
    return 2.0 * Nz.real();
}

FluxIdentityReport flux_identity_check(const MinimalGraph& graph, double c) {
    const PolarGrid& g = graph.grid;
    FluxIdentityReport rep;
    double root = c < 0.0 ? 2.0 * std::sqrt(-c) : 0.0;
    int ring = graph.has_analytic() ? 1 : 2;
    // fixed fractional window so sup-norms taken at different resolutions
    // cover the same subannulus (keeps refinement orders clean)
    double margin = 0.06 * (g.u_out() - g.u_in());
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            cplx w = g.z(i, j);
            cplx target = (c < 0.0) ? root / std::conj(w) : cplx(0.0, 0.0);
            bool in_window =
                g.u(i) >= g.u_in() + margin - 1e-12 && g.u(i) <= g.u_out() - margin + 1e-12;
            if (graph.has_analytic() || (in_window && i >= 1 && i <= g.n_u - 2)) {
                rep.sup_defect =
                    std::max(rep.sup_defect, std::abs(flux_field(graph, i, j) - target));
            }
            if (in_window && i >= ring && i <= g.n_u - 1 - ring) {
                rep.sup_divergence =
                    std::max(rep.sup_divergence, std::abs(minimal_residual(graph, i, j)));
            }
        }
    return rep;
}

double graph_area(const MinimalGraph& graph, double r_in, double r_out) {
    if (!(0 < r_in && r_in < r_out))
        throw std::invalid_argument("graph_area: need 0 < r_in < r_out");
    if (graph.has_analytic() && graph.metric.is_radial()) {
        const RadialMetric& rm = graph.metric.radial_part();
        return 2.0 * M_PI *
               integrate(
                   [&](double t) {
                       double rho = rm.eval(t);
                       double wt = graph.omega_t(t);
                       return std::sqrt(rho * rho + wt * wt) * t;
                   },
                   r_in, r_out, 1e-11);
    }
    // grid trapezoid in u, exact sum in theta over rows inside the annulus
    const PolarGrid& g = graph.grid;
    double du = g.du(), dt = g.dtheta();
    double acc = 0.0;
    for (int i = 0; i < g.n_u; ++i) {
        double r = std::exp(g.u(i));
        if (r < r_in - 1e-12 || r > r_out + 1e-12) continue;
        double wu = (i == 0 || i == g.n_u - 1) ? 0.5 : 1.0;
        for (int j = 0; j < g.n_theta; ++j) {
            cplx grad = grad_omega(graph, i, j);
            double p = graph.metric.value(g.z(i, j));
            acc += wu * std::sqrt(p * p + std::norm(grad)) * std::exp(2.0 * g.u(i)) * du * dt;
        }
    }
    return acc;
}

ConformalityDefect conformality_defect(const ConformalImmersion& imm, int i, int j) {
    Wirtinger w = imm.horizontal.f.wirtinger(i, j);
    double p = imm.horizontal.metric.value(imm.horizontal.f.at(i, j));
    cplx hz = imm.height_z(i, j);
    cplx phi = p * p * w.fz * std::conj(w.fzbar) + hz * hz;
    return {4.0 * phi.real(), -2.0 * phi.imag()};
}

namespace {

cplx F_at(const ConformalImmersion& imm, int i, int j, const cplx* prev) {
    Wirtinger w = imm.horizontal.f.wirtinger(i, j);
    cplx cf = std::conj(w.fz);
    if (std::abs(cf) == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
    cplx F = std::sqrt(-w.fzbar / cf);
    if (prev && (F.real() * prev->real() + F.imag() * prev->imag()) < 0.0) F = -F;
    return F;
}

}  // namespace

UnitNormal unit_normal(const ConformalImmersion& imm, int i, int j) {
    const PolarGrid& g = imm.grid();
    // branch continuation along the radial line from the outer boundary
    cplx F = F_at(imm, g.n_u - 1, j, nullptr);
    for (int ii = g.n_u - 2; ii >= i; --ii) F = F_at(imm, ii, j, &F);

    UnitNormal n;
    Wirtinger w = imm.horizontal.f.wirtinger(i, j);
    if (std::abs(std::conj(w.fz)) == 0.0) {
        n.z = 1.0;
        n.vertical_limit = true;
        return n;
    }
    double p = imm.horizontal.metric.value(imm.horizontal.f.at(i, j));
    double F2 = std::norm(F);
    double denom = 1.0 + F2;
    n.x = 2.0 * F.real() / p / denom;
    n.y = 2.0 * F.imag() / p / denom;
    n.z = (F2 - 1.0) / denom;
    return n;
}

TangentPlane tangent_plane_classification(const ConformalImmersion& imm, int i, int j,
                                          double tol) {
    Dilatation d = dilatation(imm.horizontal, i, j);
    double q = d.singular ? std::numeric_limits<double>::infinity() : d.mu;
    if (q <= tol) return TangentPlane::horizontal;
    if (std::abs(q - 1.0) <= tol) return TangentPlane::vertical;
    return TangentPlane::tilted;
}

ConformalImmersion conjugate_surface(const ConformalImmersion& imm) {
    if (!imm.profile)
        throw std::invalid_argument("conjugate_surface: radial (profile-backed) input required");
    if (imm.c == 0.0) return immersion_from_profile(*imm.profile, imm.grid(), imm.h0);
    RadialProfile conj_profile = solve_profile(imm.profile->metric(), -imm.c,
                                               imm.profile->s_min(), imm.profile->s_max());
    return immersion_from_profile(conj_profile, imm.grid(), imm.h0);
}

}  // namespace minigraph
