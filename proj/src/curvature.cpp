#include "minigraph/curvature.hpp"

#include <cmath>
#include <stdexcept>

#include "minigraph/errors.hpp"

namespace minigraph {

namespace {

double lambda_at(const ConformalImmersion& imm, int i, int j) {
    Wirtinger w = imm.horizontal.f.wirtinger(i, j);
    double p = imm.horizontal.metric.value(imm.horizontal.f.at(i, j));
    double s = p * (std::abs(w.fz) + std::abs(w.fzbar));
    return s * s;
}

}  // namespace

double surface_curvature_numeric(const ConformalImmersion& imm, int i, int j) {
    const PolarGrid& g = imm.grid();
    int ring = imm.horizontal.f.has_analytic() ? 1 : 2;
    if (i < ring || i > g.n_u - 1 - ring)
        throw StencilError("surface_curvature_numeric: node has no interior stencil");
    const int off[5][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    double ll[5];
    for (int k = 0; k < 5; ++k) {
        double lam = lambda_at(imm, i + off[k][0], j + off[k][1]);
        if (!(lam > 0.0))
            throw std::domain_error("surface_curvature_numeric: lambda vanishes in the stencil");
        ll[k] = std::log(lam);
    }
    double du = g.du(), dt = g.dtheta();
    double lap = std::exp(-2.0 * g.u(i)) * ((ll[1] - 2 * ll[0] + ll[2]) / (du * du) +
                                            (ll[3] - 2 * ll[0] + ll[4]) / (dt * dt));
    return -lap / (2.0 * lambda_at(imm, i, j));
}

CurvatureDecomposition curvature_decomposition(const ConformalImmersion& imm, int i, int j) {
    const PolarGrid& g = imm.grid();
    CurvatureDecomposition d;

    Wirtinger w = imm.horizontal.f.wirtinger(i, j);
    double p = imm.horizontal.metric.value(imm.horizontal.f.at(i, j));
    double afz = std::abs(w.fz), afzb = std::abs(w.fzbar);
    d.lambda = p * p * (afz + afzb) * (afz + afzb);
    d.J = p * p * (afz * afz - afzb * afzb);
    d.K_metric = imm.horizontal.metric.curvature(imm.horizontal.f.at(i, j));
    if (afz == 0.0) return d;  // mu undefined
    d.m = afzb / afz;
    d.mu = std::sqrt(d.m);
    double eta2 = 4.0 * p * p * afz * afzb;  // |eta|^2
    if (d.mu > 0.0) {
        double q = d.mu + 1.0 / d.mu;
        d.lambda_alt = 0.25 * q * q * eta2;
    }
    if (!(d.mu > 0.0) || !(d.mu < 1.0)) return d;  // decomposition undefined at 0 and 1

    double grad_m2, grad_mu2;
    if (imm.profile) {
        double s = std::abs(g.z(i, j));
        const RadialProfile& prof = *imm.profile;
        double tp = prof.p(s), dp = prof.p_prime(s), ddp = prof.p_second(s);
        double num, den, dnum, dden;
        if (prof.c() < 0.0) {  // m = (p - s p')/(p + s p')
            num = tp - s * dp;
            den = tp + s * dp;
            dnum = -s * ddp;
            dden = 2.0 * dp + s * ddp;
        } else {  // m = (s p' - p)/(s p' + p)
            num = s * dp - tp;
            den = s * dp + tp;
            dnum = s * ddp;
            dden = 2.0 * dp + s * ddp;
        }
        double dm_ds = (dnum * den - num * dden) / (den * den);
        grad_m2 = dm_ds * dm_ds;
        double dmu_ds = dm_ds / (2.0 * d.mu);
        grad_mu2 = dmu_ds * dmu_ds;
    } else {
        int ring = imm.horizontal.f.has_analytic() ? 1 : 2;
        if (i < ring || i > g.n_u - 1 - ring)
            throw StencilError("curvature_decomposition: gradient stencil off the interior");
        auto m_at = [&](int ii, int jj) {
            Dilatation dd = dilatation(imm.horizontal, ii, jj);
            if (dd.singular) throw std::domain_error("zero of f_z in the gradient stencil");
            return dd.m;
        };
        double du = g.du(), dt = g.dtheta();
        double mu_u = (m_at(i + 1, j) - m_at(i - 1, j)) / (2.0 * du);
        double mu_t = (m_at(i, j + 1) - m_at(i, j - 1)) / (2.0 * dt);
        double e2 = std::exp(-2.0 * g.u(i));
        grad_m2 = e2 * (mu_u * mu_u + mu_t * mu_t);
        grad_mu2 = grad_m2 / (4.0 * d.m);  // grad mu = grad m / (2 mu)
    }

    d.A = grad_m2;
    d.B = 4.0 * grad_mu2;
    d.X = 2.0 * d.K_metric * d.J;

    double mu2 = d.m;
    double onep = 1.0 + mu2;
    d.K = (-2.0 * d.A + d.X * mu2 * (1.0 - mu2 * mu2)) /
          (2.0 * d.lambda * mu2 * onep * onep);
    d.K_split = -d.A / (d.lambda * mu2 * onep * onep) +
                d.K_metric * d.J * (1.0 - mu2 * mu2) / (d.lambda * onep * onep);
    d.defined = true;
    return d;
}

double curvature_radial_closed_form(const RadialProfile& profile, double t) {
    const RadialMetric& rm = profile.metric().radial_part();
    double c = profile.c();
    double rho = rm.eval(t);
    double Kp = profile.metric().curvature(cplx(t, 0.0));
    if (c == 0.0) return Kp;
    double g = admissibility(rm, c, t);
    if (g <= 0.0 && c < 0.0)
        throw std::domain_error("curvature_radial_closed_form: 4c + t^2 rho^2 <= 0 at t = " +
                                std::to_string(t));
    double drho = rm.deriv(t);
    double a = rho + t * drho;
    if (c < 0.0) {
        double t2r2 = t * t * rho * rho;
        return 4.0 * c * a * a / (std::pow(t, 4) * std::pow(rho, 6)) +
               Kp * (1.0 + 4.0 * c / t2r2);
    }
    double t2r2 = t * t * rho * rho;
    double den = 4.0 * c * rho + t * t * rho * rho * rho;
    double metric_term = (t2r2 == 0.0) ? 0.0 : Kp * t2r2 / (4.0 * c + t2r2);
    return -4.0 * c * a * a / (den * den) + metric_term;
}

double curvature_euclidean_analytic(const std::function<cplx(cplx)>& omega,
                                    const std::function<cplx(cplx)>& omega_prime,
                                    double hopf_c, cplx z) {
    double om = std::abs(omega(z));
    if (om >= 1.0)
        throw std::domain_error("curvature_euclidean_analytic: |omega| >= 1 (vertical tangent)");
    double dom = std::abs(omega_prime(z));
    if (dom == 0.0) return 0.0;
    double prod = std::abs(hopf_c) / std::norm(z);  // |f_z fbar_z| = |c| / |z|^2
    double onep = 1.0 + om;
    return -dom * dom / (prod * onep * onep * onep * onep);
}

KalBound kal_bound_check(const ConformalImmersion& imm, int i, int j) {
    CurvatureDecomposition d = curvature_decomposition(imm, i, j);
    if (!d.defined)
        throw std::domain_error("kal_bound_check: decomposition undefined at the node");
    KalBound kb;
    kb.K_abs = std::abs(d.K);
    double ratio = d.B / d.lambda;
    kb.bound = std::max(std::abs(ratio), std::abs(d.K_metric - ratio));
    kb.margin = kb.bound - kb.K_abs;
    return kb;
}

}  // namespace minigraph
