#include "minigraph/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "minigraph/errors.hpp"

namespace minigraph {

namespace {

double checked_rho(const std::function<double(double)>& rho, double t) {
    double v = rho(t);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error("metric is not positive at t = " + std::to_string(t) +
                                " (rho = " + std::to_string(v) + ")");
    }
    return v;
}

}  // namespace

double RadialMetric::eval(double t) const {
    if (t < 0.0) throw std::domain_error("radial metric evaluated at t < 0");
    if (t >= t_max)
        throw std::domain_error("radial metric evaluated outside domain: t = " +
                                std::to_string(t) + " >= " + std::to_string(t_max));
    return checked_rho(rho, t);
}

double RadialMetric::deriv(double t) const {
    if (rho_prime) return rho_prime(t);
    double h = fd_step * std::max(1.0, t);
    double lo = std::max(0.0, t - h);
    return (eval(t + h) - eval(lo)) / (t + h - lo);
}

double RadialMetric::second(double t) const {
    if (rho_second) return rho_second(t);
    double h = fd_step * std::max(1.0, t);
    if (t - h < 0.0) h = 0.5 * t;
    if (h == 0.0) throw std::domain_error("cannot difference rho at t = 0");
    return (eval(t + h) - 2.0 * eval(t) + eval(t - h)) / (h * h);
}

double RadialMetric::d_log_rho(double t) const {
    if (rho_prime) return rho_prime(t) / eval(t);
    double h = fd_step * std::max(1.0, t);
    double lo = std::max(0.0, t - h);
    return (std::log(eval(t + h)) - std::log(eval(lo))) / (t + h - lo);
}

double RadialMetric::d2_log_rho(double t) const {
    if (rho_prime && rho_second) {
        double r = eval(t), r1 = rho_prime(t), r2 = rho_second(t);
        return r2 / r - (r1 / r) * (r1 / r);
    }
    double h = fd_step * std::max(1.0, t);
    if (t - h < 0.0) h = 0.5 * t;
    if (h == 0.0) throw std::domain_error("cannot difference log rho at t = 0");
    double lm = std::log(eval(t - h)), l0 = std::log(eval(t)), lp = std::log(eval(t + h));
    return (lp - 2.0 * l0 + lm) / (h * h);
}

RadialMetric radial_metric_from_samples(const std::vector<double>& t,
                                        const std::vector<double>& rho) {
    for (double v : rho)
        if (!(v > 0.0)) throw std::domain_error("tabulated metric has non-positive rho");
    auto spline = std::make_shared<NaturalSpline>(t, rho);
    RadialMetric m;
    m.rho = [spline](double x) { return (*spline)(x); };
    m.rho_prime = [spline](double x) { return spline->prime(x); };
    m.rho_second = [spline](double x) { return spline->second(x); };
    m.t_max = t.back();
    return m;
}

// ---------------------------------------------------------------------------
// Sampled (grid) metrics: Catmull-Rom bicubic in (u, theta), periodic in theta.
// ---------------------------------------------------------------------------

struct MetricField::Sampled {
    double u_in, u_out;
    int n_u, n_theta;
    std::vector<double> values;  // node-major: i_u * n_theta + j_theta

    double du() const { return (u_out - u_in) / (n_u - 1); }
    double dth() const { return 2.0 * M_PI / n_theta; }

    double at(int i, int j) const {
        i = std::clamp(i, 0, n_u - 1);
        j = ((j % n_theta) + n_theta) % n_theta;
        return values[static_cast<std::size_t>(i) * n_theta + j];
    }

    static double catmull(double pm1, double p0, double p1, double p2, double t) {
        return 0.5 * ((2.0 * p0) + (-pm1 + p1) * t +
                      (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2) * t * t +
                      (-pm1 + 3.0 * p0 - 3.0 * p1 + p2) * t * t * t);
    }

    double interp(double u, double theta) const {
        if (u < u_in - 1e-12 || u > u_out + 1e-12)
            throw std::domain_error("sampled metric evaluated outside its grid");
        double su = (u - u_in) / du();
        int i0 = std::clamp(static_cast<int>(std::floor(su)), 0, n_u - 2);
        double tu = su - i0;
        double sth = theta / dth();
        int j0 = static_cast<int>(std::floor(sth));
        double tth = sth - j0;
        double col[4];
        for (int a = -1; a <= 2; ++a) {
            col[a + 1] = catmull(at(i0 + a, j0 - 1), at(i0 + a, j0),
                                 at(i0 + a, j0 + 1), at(i0 + a, j0 + 2), tth);
        }
        return catmull(col[0], col[1], col[2], col[3], tu);
    }

    // margin so that a 5-point stencil of half-width h stays on the grid
    bool stencil_fits(double u, double h_u) const {
        return u - h_u >= u_in && u + h_u <= u_out;
    }
};

MetricField MetricField::euclidean() {
    MetricField m;
    m.kind_ = Kind::euclidean;
    RadialMetric r;
    r.rho = [](double) { return 1.0; };
    r.rho_prime = [](double) { return 0.0; };
    r.rho_second = [](double) { return 0.0; };
    m.radial_ = std::make_shared<RadialMetric>(std::move(r));
    m.curvature_fn_ = [](double) { return 0.0; };
    return m;
}

MetricField MetricField::radial(RadialMetric r, std::function<double(double)> curvature) {
    MetricField m;
    m.kind_ = Kind::radial;
    m.radial_ = std::make_shared<RadialMetric>(std::move(r));
    m.curvature_fn_ = std::move(curvature);
    return m;
}

MetricField MetricField::sampled(double r_in, double r_out, int n_u, int n_theta,
                                 std::vector<double> values) {
    if (!(0 < r_in && r_in < r_out)) throw std::invalid_argument("sampled metric: bad annulus");
    if (n_u < 8 || n_theta < 8) throw std::invalid_argument("sampled metric: grid too small");
    if (values.size() != static_cast<std::size_t>(n_u) * n_theta)
        throw std::invalid_argument("sampled metric: sample count mismatch");
    for (double v : values)
        if (!(v > 0.0)) throw std::domain_error("sampled metric has non-positive values");
    MetricField m;
    m.kind_ = Kind::sampled;
    auto s = std::make_shared<Sampled>();
    s->u_in = std::log(r_in);
    s->u_out = std::log(r_out);
    s->n_u = n_u;
    s->n_theta = n_theta;
    s->values = std::move(values);
    m.sampled_ = std::move(s);
    return m;
}

double MetricField::value(cplx w) const {
    if (kind_ == Kind::sampled) {
        double t = std::abs(w);
        if (t <= 0.0) throw std::domain_error("sampled metric evaluated at the origin");
        double th = std::arg(w);
        if (th < 0) th += 2.0 * M_PI;
        double v = sampled_->interp(std::log(t), th);
        if (!(v > 0.0)) throw std::domain_error("sampled metric interpolated non-positive");
        return v;
    }
    return radial_->eval(std::abs(w));
}

cplx MetricField::log_gradient(cplx w) const {
    if (kind_ == Kind::euclidean) return {0.0, 0.0};
    if (kind_ == Kind::radial) {
        double t = std::abs(w);
        if (t == 0.0) return {0.0, 0.0};
        // d/dw log rho(|w|) = (log rho)'(t) * conj(w) / (2 t)
        return radial_->d_log_rho(t) * std::conj(w) / (2.0 * t);
    }
    double h = fd_step_ * std::max(1.0, std::abs(w));
    double lx = std::log(value(w + h)) - std::log(value(w - h));
    double ly = std::log(value(w + cplx(0, h))) - std::log(value(w - cplx(0, h)));
    return cplx(lx, -ly) / (4.0 * h);
}

double MetricField::curvature(cplx w) const {
    double t = std::abs(w);
    if (curvature_fn_) return curvature_fn_(t);
    if (is_radial()) {
        const RadialMetric& rm = *radial_;
        double rho = rm.eval(t);
        // radial Laplacian of log rho: g'' + g'/t, with the smooth-origin
        // limit Delta g(0) = 2 g''(0)
        double lap;
        if (t < 1e-7) {
            lap = 2.0 * rm.d2_log_rho(t);
        } else {
            lap = rm.d2_log_rho(t) + rm.d_log_rho(t) / t;
        }
        return -lap / (rho * rho);
    }
    // sampled metric: 5-point Cartesian Laplacian of log p
    double h = fd_step_ * std::max(1.0, t);
    for (cplx p : {w + h, w - h, w + cplx(0, h), w - cplx(0, h)}) {
        double r = std::abs(p);
        if (r <= 0.0 || !sampled_->stencil_fits(std::log(r), 0.0))
            throw StencilError("curvature stencil leaves the sampled grid at |w| = " +
                               std::to_string(r));
    }
    double c0 = std::log(value(w));
    double lap = (std::log(value(w + h)) + std::log(value(w - h)) +
                  std::log(value(w + cplx(0, h))) + std::log(value(w - cplx(0, h))) -
                  4.0 * c0) /
                 (h * h);
    double p = value(w);
    return -lap / (p * p);
}

const RadialMetric& MetricField::radial_part() const {
    if (!radial_) throw std::logic_error("metric has no radial representation");
    return *radial_;
}

void MetricField::set_fd_step(double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd step must be positive");
    fd_step_ = h;
    if (radial_) {
        auto copy = std::make_shared<RadialMetric>(*radial_);
        copy->fd_step = h;
        radial_ = std::move(copy);
    }
}

double MetricField::curvature_sup(double t_lo, double t_hi, int n) const {
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / (n - 1);
        sup = std::max(sup, std::abs(curvature(cplx(t, 0.0))));
    }
    return sup;
}

double gauss_curvature(const MetricField& metric, cplx w) { return metric.curvature(w); }

MetricField metric_scale(const MetricField& metric, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("metric_scale: R must be positive");
    if (metric.kind() == MetricField::Kind::sampled)
        throw std::invalid_argument("metric_scale: sampled metrics are not scalable in place");
    const RadialMetric& base = metric.radial_part();
    RadialMetric scaled;
    scaled.rho = [R, base](double t) { return R * base.rho(t); };
    if (base.rho_prime) scaled.rho_prime = [R, base](double t) { return R * base.rho_prime(t); };
    if (base.rho_second)
        scaled.rho_second = [R, base](double t) { return R * base.rho_second(t); };
    scaled.t_max = base.t_max;
    scaled.fd_step = base.fd_step;
    std::function<double(double)> K;
    if (metric.has_analytic_curvature()) {
        MetricField self = metric;  // capture by value for the analytic path
        K = [R, self](double t) { return self.curvature(cplx(t, 0.0)) / (R * R); };
    }
    return MetricField::radial(std::move(scaled), std::move(K));
}

double geodesic_distance_radial(const RadialMetric& metric, double t) {
    if (t < 0.0) throw std::domain_error("geodesic distance requested for t < 0");
    if (t == 0.0) return 0.0;
    return integrate([&metric](double y) { return metric.eval(y); }, 0.0, t, 1e-12);
}

double metric_area(const MetricField& metric, double r_in, double r_out) {
    if (!(0 < r_in && r_in < r_out))
        throw std::invalid_argument("metric_area: need 0 < r_in < r_out");
    if (metric.is_radial()) {
        const RadialMetric& rm = metric.radial_part();
        double v = 2.0 * M_PI *
                   integrate(
                       [&rm](double t) {
                           double r = rm.eval(t);
                           return r * r * t;
                       },
                       r_in, r_out, 1e-12);
        if (!std::isfinite(v)) throw NumericError("metric_area integrand diverged");
        return v;
    }
    // product quadrature (midpoint x midpoint) for sampled metrics
    int n_t = 256, n_th = 256;
    double acc = 0.0;
    double dt = (r_out - r_in) / n_t, dth = 2.0 * M_PI / n_th;
    for (int i = 0; i < n_t; ++i) {
        double t = r_in + (i + 0.5) * dt;
        for (int j = 0; j < n_th; ++j) {
            double th = (j + 0.5) * dth;
            double p = metric.value(std::polar(t, th));
            acc += p * p * t * dt * dth;
        }
    }
    return acc;
}

MetricField parse_metric(const std::string& name) {
    auto radial_of = [](std::function<double(double)> f, std::function<double(double)> f1,
                        std::function<double(double)> f2, double t_max,
                        std::function<double(double)> K) {
        RadialMetric r;
        r.rho = std::move(f);
        r.rho_prime = std::move(f1);
        r.rho_second = std::move(f2);
        r.t_max = t_max;
        return MetricField::radial(std::move(r), std::move(K));
    };
    const double inf = std::numeric_limits<double>::infinity();
    if (name == "euclidean") return MetricField::euclidean();
    if (name == "sphere") {
        return radial_of([](double t) { return 2.0 / (1.0 + t * t); },
                         [](double t) {
                             double d = 1.0 + t * t;
                             return -4.0 * t / (d * d);
                         },
                         [](double t) {
                             double d = 1.0 + t * t;
                             return (12.0 * t * t - 4.0) / (d * d * d);
                         },
                         inf, [](double) { return 1.0; });
    }
    if (name == "hyperbolic") {
        return radial_of([](double t) { return 2.0 / (1.0 - t * t); },
                         [](double t) {
                             double d = 1.0 - t * t;
                             return 4.0 * t / (d * d);
                         },
                         [](double t) {
                             double d = 1.0 - t * t;
                             return (12.0 * t * t + 4.0) / (d * d * d);
                         },
                         1.0, [](double) { return -1.0; });
    }
    if (name.rfind("power:", 0) == 0) {
        double k = std::stod(name.substr(6));
        return radial_of([k](double t) { return std::pow(t, k); },
                         [k](double t) { return k * std::pow(t, k - 1.0); },
                         [k](double t) { return k * (k - 1.0) * std::pow(t, k - 2.0); },
                         inf, [](double) { return 0.0; });
    }
    if (name.rfind("cigar:", 0) == 0) {
        double a = std::stod(name.substr(6));
        return radial_of([a](double t) { return 2.0 / (1.0 + a * t * t); },
                         [a](double t) {
                             double d = 1.0 + a * t * t;
                             return -4.0 * a * t / (d * d);
                         },
                         [a](double t) {
                             double d = 1.0 + a * t * t;
                             return (12.0 * a * a * t * t - 4.0 * a) / (d * d * d);
                         },
                         inf, [a](double) { return a; });
    }
    if (name.rfind("csv:", 0) == 0) {
        std::ifstream in(name.substr(4));
        if (!in) throw std::invalid_argument("cannot open metric table: " + name.substr(4));
        std::vector<double> ts, rhos;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            for (char& ch : line)
                if (ch == ',' || ch == ';') ch = ' ';
            std::istringstream ls(line);
            double t, r;
            if (ls >> t >> r) {
                ts.push_back(t);
                rhos.push_back(r);
            }
        }
        if (ts.size() < 3) throw std::invalid_argument("metric table needs >= 3 rows");
        return MetricField::radial(radial_metric_from_samples(ts, rhos), nullptr);
    }
    throw std::invalid_argument("unknown metric name: " + name);
}

}  // namespace minigraph
