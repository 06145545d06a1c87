#include "minigraph/grid.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "minigraph/errors.hpp"

namespace minigraph {

PolarGrid::PolarGrid(double r_in_, double r_out_, int n_u_, int n_theta_)
    : r_in(r_in_), r_out(r_out_), n_u(n_u_), n_theta(n_theta_) {
    if (!(0 < r_in && r_in < r_out))
        throw std::invalid_argument("PolarGrid: need 0 < r_in < r_out");
    if (n_u < 8 || n_theta < 8)
        throw std::invalid_argument("PolarGrid: need n_u >= 8 and n_theta >= 8");
    u_in_ = std::log(r_in);
    u_out_ = std::log(r_out);
}

ComplexField::ComplexField(PolarGrid grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size())
        throw std::invalid_argument("ComplexField: sample count mismatch");
    for (const cplx& v : samples_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("ComplexField: non-finite sample");
}

ComplexField::ComplexField(PolarGrid grid, const std::function<cplx(cplx)>& fn)
    : grid_(grid), samples_(grid.size()) {
    for (int i = 0; i < grid_.n_u; ++i)
        for (int j = 0; j < grid_.n_theta; ++j) samples_[grid_.idx(i, j)] = fn(grid_.z(i, j));
}

void ComplexField::set_analytic(std::function<cplx(cplx)> fz, std::function<cplx(cplx)> fzbar,
                                std::function<cplx(cplx)> fzzbar) {
    fz_ = std::move(fz);
    fzbar_ = std::move(fzbar);
    fzzbar_ = std::move(fzzbar);
}

cplx ComplexField::f_zzbar(int i, int j) const {
    if (fzzbar_) return fzzbar_(grid_.z(i, j));
    return 0.25 * laplacian(*this, i, j);
}

cplx ComplexField::d_theta(int i, int j) const {
    return (at(i, j + 1) - at(i, j - 1)) / (2.0 * grid_.dtheta());
}

cplx ComplexField::d_u(int i, int j) const {
    double du = grid_.du();
    if (grid_.interior_u(i)) return (at(i + 1, j) - at(i - 1, j)) / (2.0 * du);
    if (i == 0) return (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) / (2.0 * du);
    int n = grid_.n_u - 1;
    return (3.0 * at(n, j) - 4.0 * at(n - 1, j) + at(n - 2, j)) / (2.0 * du);
}

Wirtinger ComplexField::wirtinger(int i, int j) const {
    if (fz_ && fzbar_) {
        cplx z = grid_.z(i, j);
        return {fz_(z), fzbar_(z), DerivPath::analytic};
    }
    cplx fu = d_u(i, j);
    cplx ft = d_theta(i, j);
    cplx z = grid_.z(i, j);
    cplx inv_z = 1.0 / z;
    cplx inv_zbar = 1.0 / std::conj(z);
    cplx fz = 0.5 * inv_z * (fu - cplx(0, 1) * ft);
    cplx fzbar = 0.5 * inv_zbar * (fu + cplx(0, 1) * ft);
    return {fz, fzbar, grid_.interior_u(i) ? DerivPath::centered : DerivPath::one_sided};
}

ScalarField::ScalarField(PolarGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size())
        throw std::invalid_argument("ScalarField: sample count mismatch");
}

ScalarField::ScalarField(PolarGrid grid, const std::function<double(cplx)>& fn)
    : grid_(grid), samples_(grid.size()) {
    for (int i = 0; i < grid_.n_u; ++i)
        for (int j = 0; j < grid_.n_theta; ++j) samples_[grid_.idx(i, j)] = fn(grid_.z(i, j));
}

double ScalarField::d_theta(int i, int j) const {
    return (at(i, j + 1) - at(i, j - 1)) / (2.0 * grid_.dtheta());
}

double ScalarField::d_u(int i, int j) const {
    double du = grid_.du();
    if (grid_.interior_u(i)) return (at(i + 1, j) - at(i - 1, j)) / (2.0 * du);
    if (i == 0) return (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) / (2.0 * du);
    int n = grid_.n_u - 1;
    return (3.0 * at(n, j) - 4.0 * at(n - 1, j) + at(n - 2, j)) / (2.0 * du);
}

cplx ScalarField::gradient(int i, int j) const {
    // grad g = 2 d/dzbar g for real g; in log-polar coordinates
    // g_x + i g_y = e^{-u} e^{i theta} (g_u + i g_theta).
    double gu = d_u(i, j);
    double gt = d_theta(i, j);
    cplx z = grid_.z(i, j);
    return cplx(gu, gt) * z / std::norm(z);
}

namespace {

void require_interior(const PolarGrid& g, int i, const char* op) {
    if (!g.interior_u(i))
        throw StencilError(std::string(op) + ": node row " + std::to_string(i) +
                           " has no interior stencil (n_u = " + std::to_string(g.n_u) + ")");
}

}  // namespace

cplx laplacian(const ComplexField& field, int i, int j) {
    const PolarGrid& g = field.grid();
    require_interior(g, i, "laplacian");
    double du = g.du(), dt = g.dtheta();
    cplx fuu = (field.at(i + 1, j) - 2.0 * field.at(i, j) + field.at(i - 1, j)) / (du * du);
    cplx ftt = (field.at(i, j + 1) - 2.0 * field.at(i, j) + field.at(i, j - 1)) / (dt * dt);
    return std::exp(-2.0 * g.u(i)) * (fuu + ftt);
}

double laplacian(const ScalarField& field, int i, int j) {
    const PolarGrid& g = field.grid();
    require_interior(g, i, "laplacian");
    double du = g.du(), dt = g.dtheta();
    double fuu = (field.at(i + 1, j) - 2.0 * field.at(i, j) + field.at(i - 1, j)) / (du * du);
    double ftt = (field.at(i, j + 1) - 2.0 * field.at(i, j) + field.at(i, j - 1)) / (dt * dt);
    return std::exp(-2.0 * g.u(i)) * (fuu + ftt);
}

double divergence(const ComplexField& vfield, int i, int j) {
    require_interior(vfield.grid(), i, "divergence");
    Wirtinger w = vfield.wirtinger(i, j);
    return 2.0 * w.fz.real();
}

void dump_field_csv(const ComplexField& field, std::ostream& out) {
    const PolarGrid& g = field.grid();
    out << "u,theta,re,im\n";
    out.precision(17);
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            cplx v = field.at(i, j);
            out << g.u(i) << ',' << g.theta(j) << ',' << v.real() << ',' << v.imag() << '\n';
        }
}

}  // namespace minigraph
