#include "minigraph/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minigraph/errors.hpp"
#include "minigraph/numerics.hpp"

namespace minigraph {

void HarmonicMapCandidate::validate(double tol) const {
    const PolarGrid& g = grid();
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            double r = std::abs(f.at(i, j));
            if (r < target_in - tol || r > target_out + tol)
                throw std::domain_error("candidate leaves the target annulus at node (" +
                                        std::to_string(i) + ", " + std::to_string(j) +
                                        "): |f| = " + std::to_string(r));
        }
}

EnergyReport dirichlet_energy(const HarmonicMapCandidate& cand) {
    const PolarGrid& g = cand.grid();
    double du = g.du(), dt = g.dtheta();
    double energy = 0.0, excess = 0.0;
    for (int i = 0; i < g.n_u; ++i) {
        double wu = (i == 0 || i == g.n_u - 1) ? 0.5 : 1.0;
        double jac = std::exp(2.0 * g.u(i));  // dx dy = e^{2u} du dtheta
        for (int j = 0; j < g.n_theta; ++j) {
            Wirtinger w = cand.f.wirtinger(i, j);
            double p2;
            try {
                double p = cand.metric.value(cand.f.at(i, j));
                p2 = p * p;
            } catch (const std::domain_error& e) {
                throw std::domain_error("dirichlet_energy: f exits the metric domain at node (" +
                                        std::to_string(i) + ", " + std::to_string(j) +
                                        "): " + e.what());
            }
            double w_cell = wu * jac * du * dt;
            energy += w_cell * p2 * (std::norm(w.fz) + std::norm(w.fzbar));
            excess += w_cell * 4.0 * p2 * std::norm(w.fzbar);
        }
    }
    EnergyReport rep;
    rep.energy = energy;
    rep.antiholomorphic_excess = excess;
    rep.area_lower_bound = 2.0 * metric_area(cand.metric, cand.target_in, cand.target_out);
    return rep;
}

cplx harmonic_residual(const HarmonicMapCandidate& cand, int i, int j) {
    Wirtinger w = cand.f.wirtinger(i, j);
    cplx fzz = cand.f.f_zzbar(i, j);
    // (log p^2)_w = 2 (log p)_w
    cplx lg = 2.0 * cand.metric.log_gradient(cand.f.at(i, j));
    return fzz + lg * w.fz * w.fzbar;
}

cplx hopf_differential(const HarmonicMapCandidate& cand, int i, int j) {
    Wirtinger w = cand.f.wirtinger(i, j);
    double p = cand.metric.value(cand.f.at(i, j));
    return p * p * w.fz * std::conj(w.fzbar);
}

HopfFit hopf_fit_c(const HarmonicMapCandidate& cand, int collar) {
    const PolarGrid& g = cand.grid();
    collar = std::max(1, collar);
    if (g.n_u <= 2 * collar)
        throw std::invalid_argument("hopf_fit_c: grid too small for the collar");
    cplx mean = 0.0;
    double wsum = 0.0, scale = 0.0;
    for (int i = collar; i < g.n_u - collar; ++i) {
        double w_cell = std::exp(2.0 * g.u(i));
        for (int j = 0; j < g.n_theta; ++j) {
            cplx z = g.z(i, j);
            cplx v = z * z * hopf_differential(cand, i, j);
            mean += w_cell * v;
            wsum += w_cell;
            scale = std::max(scale, std::abs(v));
        }
    }
    mean /= wsum;
    HopfFit fit;
    if (std::abs(mean) < 1e-12 * std::max(1.0, scale) && scale > 1e-10) {
        fit.c = 0.0;
        fit.relative_deviation = std::numeric_limits<double>::infinity();
        return fit;
    }
    fit.c = mean.real();
    double worst = 0.0;
    for (int i = collar; i < g.n_u - collar; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            cplx z = g.z(i, j);
            cplx v = z * z * hopf_differential(cand, i, j);
            worst = std::max(worst, std::abs(v - mean));
        }
    fit.relative_deviation = (std::abs(mean) == 0.0) ? (worst == 0.0 ? 0.0 :
                              std::numeric_limits<double>::infinity())
                                                     : worst / std::abs(mean);
    return fit;
}

Dilatation dilatation(const HarmonicMapCandidate& cand, int i, int j) {
    Wirtinger w = cand.f.wirtinger(i, j);
    double p = cand.metric.value(cand.f.at(i, j));
    Dilatation d;
    d.dP = p * std::abs(w.fz);
    d.dM = p * std::abs(w.fzbar);
    d.J = d.dP * d.dP - d.dM * d.dM;
    if (w.fz == cplx(0.0, 0.0)) {
        d.singular = true;
        return d;
    }
    d.m = std::abs(w.fzbar / w.fz);
    d.mu = std::sqrt(d.m);
    return d;
}

BochnerDefect bochner_defect(const HarmonicMapCandidate& cand, int i, int j) {
    const PolarGrid& g = cand.grid();
    if (!g.interior_u(i))
        throw StencilError("bochner_defect: interior node required");
    // log|df| and log|dbar f| on the 5-point stencil
    double lp[5], lm[5];
    const int off[5][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    BochnerDefect out;
    for (int k = 0; k < 5; ++k) {
        int ii = i + off[k][0], jj = j + off[k][1];
        Dilatation d = dilatation(cand, ii, jj);
        if (d.dP <= 0.0 || d.dM <= 0.0) {
            out.skipped = true;  // isolated zero inside the stencil
            return out;
        }
        lp[k] = std::log(d.dP);
        lm[k] = std::log(d.dM);
    }
    double du = g.du(), dt = g.dtheta();
    double e2u = std::exp(-2.0 * g.u(i));
    double lap_p = e2u * ((lp[1] - 2 * lp[0] + lp[2]) / (du * du) +
                          (lp[3] - 2 * lp[0] + lp[4]) / (dt * dt));
    double lap_m = e2u * ((lm[1] - 2 * lm[0] + lm[2]) / (du * du) +
                          (lm[3] - 2 * lm[0] + lm[4]) / (dt * dt));
    Dilatation d0 = dilatation(cand, i, j);
    double K = cand.metric.curvature(cand.f.at(i, j));
    out.dP_defect = lap_p + K * d0.J;
    out.dM_defect = lap_m - K * d0.J;
    return out;
}

MuSchwarzReport mu_schwarz_check(const HarmonicMapCandidate& cand, double tol) {
    const PolarGrid& g = cand.grid();
    MuSchwarzReport rep;
    // max mu / |z| over all nodes where f_z != 0
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            Dilatation d = dilatation(cand, i, j);
            if (d.singular) continue;
            double ratio = d.mu / std::abs(g.z(i, j));
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.iu = i;
                rep.jt = j;
            }
        }
    // Hopf zero order at 0: least-squares slope of log|Hopf| against log|z|
    // over the innermost 10% of radii (theta-averaged per row).
    int rows = std::max(2, g.n_u / 10);
    std::vector<double> xs, ys;
    for (int i = 0; i < rows; ++i) {
        double acc = 0.0;
        for (int j = 0; j < g.n_theta; ++j) acc += std::abs(hopf_differential(cand, i, j));
        acc /= g.n_theta;
        if (acc > 0.0) {
            xs.push_back(g.u(i));
            ys.push_back(std::log(acc));
        }
    }
    rep.hopf_zero_order = (xs.size() >= 2) ? fit_slope(xs, ys) : 0.0;
    double dm0 = 0.0;
    for (int j = 0; j < g.n_theta; ++j)
        dm0 = std::max(dm0, std::abs(cand.f.wirtinger(0, j).fzbar));
    rep.fzbar_origin = dm0;
    rep.hypothesis_ok = rep.hopf_zero_order >= 2.0 - 0.1;
    rep.claim_holds = rep.max_ratio <= 1.0 + tol;
    rep.claim_asserted = rep.claim_holds && rep.hypothesis_ok;
    return rep;
}

SchwarzDistanceReport schwarz_distance_check(const HarmonicMapCandidate& cand,
                                             cplx origin_image, double R, double tol) {
    const PolarGrid& g = cand.grid();
    const bool flat = cand.metric.kind() == MetricField::Kind::euclidean;
    if (!flat && !(cand.metric.is_radial() && std::abs(origin_image) < 1e-12))
        throw std::invalid_argument(
            "schwarz_distance_check: distance available only for the euclidean metric or "
            "radial metrics about the origin");
    auto dist = [&](cplx w) {
        if (flat) return std::abs(w - origin_image);
        return geodesic_distance_radial(cand.metric.radial_part(), std::abs(w));
    };
    SchwarzDistanceReport rep;
    if (R <= 0.0) {
        for (int i = 0; i < g.n_u; ++i)
            for (int j = 0; j < g.n_theta; ++j) R = std::max(R, dist(cand.f.at(i, j)));
    }
    rep.R = R;
    rep.max_excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            double lhs = dist(cand.f.at(i, j));
            double rhs = R * (4.0 / M_PI) * std::atan(std::abs(g.z(i, j)));
            double excess = lhs - rhs;
            if (excess > rep.max_excess) {
                rep.max_excess = excess;
                rep.iu = i;
                rep.jt = j;
            }
        }
    rep.pass = rep.max_excess <= tol;
    return rep;
}

}  // namespace minigraph
