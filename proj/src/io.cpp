#include "minigraph/io.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "minigraph/curvature.hpp"
#include "minigraph/errors.hpp"

namespace minigraph {

namespace {

const double kNan = std::numeric_limits<double>::quiet_NaN();

double closed_form_or_nan(const ConformalImmersion& imm, int i, int j) {
    if (!imm.profile) return kNan;
    double t = std::abs(imm.horizontal.f.at(i, j));
    try {
        return curvature_radial_closed_form(*imm.profile, t);
    } catch (const std::exception&) {
        return kNan;
    }
}

double numeric_or_nan(const ConformalImmersion& imm, int i, int j) {
    try {
        return surface_curvature_numeric(imm, i, j);
    } catch (const std::exception&) {
        return kNan;
    }
}

}  // namespace

void dump_surface_csv(const ConformalImmersion& imm, std::ostream& out) {
    const PolarGrid& g = imm.grid();
    out << "u,theta,x,y,height,K,Nx,Ny,Nz\n";
    out.precision(17);
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            cplx w = imm.horizontal.f.at(i, j);
            double K = imm.profile ? closed_form_or_nan(imm, i, j) : numeric_or_nan(imm, i, j);
            UnitNormal n = unit_normal(imm, i, j);
            out << g.u(i) << ',' << g.theta(j) << ',' << w.real() << ',' << w.imag() << ','
                << imm.height.at(i, j) << ',' << K << ',' << n.x << ',' << n.y << ',' << n.z
                << '\n';
        }
}

void dump_curvature_csv(const ConformalImmersion& imm, std::ostream& out) {
    const PolarGrid& g = imm.grid();
    out << "u,theta,K_numeric,K_decomp,K_closed,lambda,mu\n";
    out.precision(17);
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            double Kn = numeric_or_nan(imm, i, j);
            CurvatureDecomposition d = curvature_decomposition(imm, i, j);
            double Kd = d.defined ? d.K : kNan;
            double Kc = closed_form_or_nan(imm, i, j);
            out << g.u(i) << ',' << g.theta(j) << ',' << Kn << ',' << Kd << ',' << Kc << ','
                << d.lambda << ',' << d.mu << '\n';
        }
}

void dump_profile_csv(const RadialProfile& profile, int n, std::ostream& out) {
    out << "s,p,dp_ds,hopf_c_check\n";
    out.precision(17);
    double v0 = std::log(profile.s_min()), v1 = std::log(profile.s_max());
    for (int k = 0; k < n; ++k) {
        double s = std::exp(v0 + (v1 - v0) * k / (n - 1));
        out << s << ',' << profile.p(s) << ',' << profile.p_prime(s) << ','
            << profile.hopf_constant_check(s) << '\n';
    }
}

void dump_energy_trace_csv(const std::vector<double>& trace, std::ostream& out) {
    out << "sweep,energy\n";
    out.precision(17);
    for (std::size_t k = 0; k < trace.size(); ++k) out << k << ',' << trace[k] << '\n';
}

void dump_reports_json(const std::vector<BoundReport>& reports, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BoundReport& r : reports) {
        nlohmann::json item;
        item["name"] = r.name;
        item["lhs"] = r.lhs;
        item["rhs"] = r.rhs;
        item["margin"] = r.margin;
        item["witness"] = r.witness;
        item["hypothesis_ok"] = r.hypothesis_ok;
        item["params"] = r.params;
        arr.push_back(std::move(item));
    }
    out << arr.dump(2) << '\n';
}

void dump_surface_obj(const ConformalImmersion& imm, std::ostream& out) {
    const PolarGrid& g = imm.grid();
    out << "# parametric surface mesh, " << g.n_u << " x " << g.n_theta << " vertices\n";
    out.precision(12);
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            cplx w = imm.horizontal.f.at(i, j);
            double K = imm.profile ? closed_form_or_nan(imm, i, j) : numeric_or_nan(imm, i, j);
            out << "# K " << K << '\n';
            out << "v " << w.real() << ' ' << w.imag() << ' ' << imm.height.at(i, j) << '\n';
        }
    auto vid = [&](int i, int j) { return 1 + i * g.n_theta + g.wrap(j); };
    const bool helicoidal_seam = imm.kind == SurfaceKind::helicoidal;
    for (int i = 0; i + 1 < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            if (helicoidal_seam && j == g.n_theta - 1) continue;  // branch seam stays open
            int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            out << "f " << a << ' ' << b << ' ' << c << '\n';
            out << "f " << a << ' ' << c << ' ' << d << '\n';
        }
}

}  // namespace minigraph
