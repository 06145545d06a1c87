#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "minigraph/harmonic.hpp"

namespace minigraph {

namespace {

struct Sweeper {
    const PolarGrid& g;
    const MetricField& metric;
    std::vector<cplx>& f;
    std::vector<double>& G;  // p^2(f) cache; empty when flat
    double wu, wt;
    double rho_in, rho_out;
    double damping;
    bool flat;
    double max_step = 0.0;  // sup preconditioned gradient over the sweep

    std::size_t idx(int i, int j) const { return g.idx(i, j); }

    double Gval(std::size_t k) const { return flat ? 1.0 : G[k]; }

    void neighbors(int i, int j, std::size_t* nb, double* w, int& n) const {
        n = 0;
        if (i > 0) { nb[n] = idx(i - 1, j); w[n++] = wu; }
        if (i < g.n_u - 1) { nb[n] = idx(i + 1, j); w[n++] = wu; }
        nb[n] = idx(i, j - 1); w[n++] = wt;
        nb[n] = idx(i, j + 1); w[n++] = wt;
    }

    double local_energy(cplx fa, double Ga, const std::size_t* nb, const double* w,
                        int n) const {
        double e = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx d = fa - f[nb[k]];
            e += 0.25 * w[k] * (Ga + Gval(nb[k])) * std::norm(d);
        }
        return e;
    }

    // one node update; returns the preconditioned gradient magnitude
    double update(int i, int j) {
        std::size_t a = idx(i, j);
        std::size_t nb[4];
        double w[4];
        int n;
        neighbors(i, j, nb, w, n);

        cplx fa = f[a];
        double Ga = Gval(a);
        cplx grad = 0.0;
        double D = 0.0;
        double sq = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx d = fa - f[nb[k]];
            double Gbar = 0.5 * (Ga + Gval(nb[k]));
            grad += 0.5 * w[k] * Gbar * d;
            D += 0.5 * w[k] * Gbar;
            sq += w[k] * std::norm(d);
        }
        if (!flat) grad += 0.25 * std::conj(Gw(fa, Ga)) * sq;

        const bool boundary = (i == 0 || i == g.n_u - 1);
        double gmag;
        if (boundary) {
            cplx nhat = fa / std::abs(fa);
            cplx tang = grad - nhat * (grad.real() * nhat.real() + grad.imag() * nhat.imag());
            gmag = std::abs(tang) / D;
        } else {
            gmag = std::abs(grad) / D;
        }

        double tau = damping;
        for (int attempt = 0; attempt < 4; ++attempt) {
            cplx trial = fa - tau * grad / D;
            if (boundary) {
                double r = std::abs(trial);
                if (r == 0.0) break;
                trial *= (i == 0 ? rho_in : rho_out) / r;
            }
            if (flat) {
                f[a] = trial;
                return gmag;
            }
            double Gt = p2(trial);
            if (local_energy(trial, Gt, nb, w, n) <= local_energy(fa, Ga, nb, w, n)) {
                f[a] = trial;
                G[a] = Gt;
                return gmag;
            }
            tau *= 0.5;
        }
        return gmag;  // keep the old value
    }

    double p2(cplx wpt) const {
        double p = metric.value(wpt);
        return p * p;
    }

    cplx Gw(cplx wpt, double Gv) const {
        // d/dw p^2 = p^2 * (log p^2)_w = 2 p^2 (log p)_w
        return 2.0 * Gv * metric.log_gradient(wpt);
    }

    void sweep_color(int color, int i_lo, int i_hi, double& step_out) {
        double local = 0.0;
        for (int i = i_lo; i < i_hi; ++i)
            for (int j = (i + color) % 2; j < g.n_theta; j += 2)
                local = std::max(local, update(i, j));
        step_out = std::max(step_out, local);
    }

    double total_energy() const {
        double e = 0.0;
        for (int i = 0; i < g.n_u; ++i)
            for (int j = 0; j < g.n_theta; ++j) {
                std::size_t a = idx(i, j);
                if (i < g.n_u - 1) {
                    std::size_t b = idx(i + 1, j);
                    e += 0.25 * wu * (Gval(a) + Gval(b)) * std::norm(f[a] - f[b]);
                }
                std::size_t b = idx(i, j + 1);
                e += 0.25 * wt * (Gval(a) + Gval(b)) * std::norm(f[a] - f[b]);
            }
        return e;
    }
};

}  // namespace

MinimizeResult minimize_energy(const PolarGrid& domain, double target_in, double target_out,
                               const MetricField& metric, const MinimizeOptions& opts) {
    if (!(0 < target_in && target_in < target_out))
        throw std::invalid_argument("minimize_energy: need 0 < target_in < target_out");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw std::invalid_argument("minimize_energy: damping must lie in (0, 1]");

    const bool flat = metric.kind() == MetricField::Kind::euclidean;
    std::vector<cplx> f(domain.size());
    // seed: radius affine in u between the boundary circles, identity in theta
    for (int i = 0; i < domain.n_u; ++i) {
        double lam = (domain.u(i) - domain.u_in()) / (domain.u_out() - domain.u_in());
        double r = target_in + (target_out - target_in) * lam;
        for (int j = 0; j < domain.n_theta; ++j)
            f[domain.idx(i, j)] = std::polar(r, domain.theta(j) + opts.seed_rotation);
    }
    std::vector<double> G;
    if (!flat) {
        G.resize(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) {
            double p = metric.value(f[k]);
            G[k] = p * p;
        }
    }

    Sweeper sw{domain, metric, f,      G,          domain.dtheta() / domain.du(),
               domain.du() / domain.dtheta(), target_in, target_out, opts.damping, flat};

    std::vector<double> trace;
    trace.reserve(256);
    double E = sw.total_energy();
    trace.push_back(E);

    const int workers = std::max(1, opts.workers);
    const bool parallel = workers > 1 && domain.n_theta % 2 == 0;

    bool converged = false;
    int sweeps = 0;
    double final_step = 0.0;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        sw.max_step = 0.0;
        for (int color = 0; color < 2; ++color) {
            if (!parallel) {
                sw.sweep_color(color, 0, domain.n_u, sw.max_step);
            } else {
                std::vector<std::thread> pool;
                std::vector<double> steps(workers, 0.0);
                int rows = domain.n_u, chunk = (rows + workers - 1) / workers;
                for (int t = 0; t < workers; ++t) {
                    int lo = t * chunk, hi = std::min(rows, lo + chunk);
                    if (lo >= hi) break;
                    pool.emplace_back([&sw, color, lo, hi, &steps, t] {
                        sw.sweep_color(color, lo, hi, steps[t]);
                    });
                }
                for (auto& th : pool) th.join();
                for (double s : steps) sw.max_step = std::max(sw.max_step, s);
            }
        }
        double E_new = sw.total_energy();
        trace.push_back(E_new);
        double decrease = E - E_new;
        E = E_new;
        sweeps = sweep + 1;
        final_step = sw.max_step;
        if (std::abs(decrease) <= opts.tol_energy * std::max(1.0, std::abs(E)) &&
            sw.max_step <= opts.tol_grad) {
            converged = true;
            break;
        }
    }

    MinimizeResult res{
        HarmonicMapCandidate{ComplexField(domain, std::move(f)), metric, target_in, target_out}};
    res.converged = converged;
    res.sweeps = sweeps;
    res.energy = E;
    res.final_step = final_step;
    res.energy_trace = std::move(trace);
    // discrete Jacobian sign scan (fold detection)
    double J_min = 0.0;
    for (int i = 1; i < domain.n_u - 1; ++i)
        for (int j = 0; j < domain.n_theta; ++j) {
            Wirtinger w = res.candidate.f.wirtinger(i, j);
            J_min = std::min(J_min, std::norm(w.fz) - std::norm(w.fzbar));
        }
    res.fold_warning = J_min < -1e-12;
    return res;
}

}  // namespace minigraph
