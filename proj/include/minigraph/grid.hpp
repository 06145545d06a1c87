#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

namespace minigraph {

using cplx = std::complex<double>;

// Log-polar grid over the annulus A(r_in, r_out): nodes uniform in
// u = log|z| (n_u rows, both boundaries included) and in theta
// (n_theta columns, periodic, the 2*pi row is not stored).
struct PolarGrid {
    PolarGrid(double r_in, double r_out, int n_u, int n_theta);

    double r_in, r_out;
    int n_u, n_theta;

    double u_in() const { return u_in_; }
    double u_out() const { return u_out_; }
    double du() const { return (u_out_ - u_in_) / (n_u - 1); }
    double dtheta() const { return two_pi_ / n_theta; }

    double u(int i) const { return u_in_ + i * du(); }
    double theta(int j) const { return j * dtheta(); }
    cplx z(int i, int j) const { return std::polar(std::exp(u(i)), theta(j)); }

    std::size_t size() const { return static_cast<std::size_t>(n_u) * n_theta; }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_theta + wrap(j);
    }
    int wrap(int j) const { return ((j % n_theta) + n_theta) % n_theta; }
    bool interior_u(int i) const { return i >= 1 && i <= n_u - 2; }

    bool operator==(const PolarGrid& o) const {
        return r_in == o.r_in && r_out == o.r_out && n_u == o.n_u && n_theta == o.n_theta;
    }

private:
    double u_in_, u_out_;
    static constexpr double two_pi_ = 6.283185307179586476925287;
};

enum class DerivPath { analytic, centered, one_sided };

struct Wirtinger {
    cplx fz;
    cplx fzbar;
    DerivPath path;
};

// Grid-sampled complex map with optional analytic derivative closures.
class ComplexField {
public:
    ComplexField(PolarGrid grid, std::vector<cplx> samples);
    ComplexField(PolarGrid grid, const std::function<cplx(cplx)>& fn);

    const PolarGrid& grid() const { return grid_; }
    const std::vector<cplx>& samples() const { return samples_; }
    cplx at(int i, int j) const { return samples_[grid_.idx(i, j)]; }
    cplx& at(int i, int j) { return samples_[grid_.idx(i, j)]; }

    void set_analytic(std::function<cplx(cplx)> fz, std::function<cplx(cplx)> fzbar,
                      std::function<cplx(cplx)> fzzbar = nullptr);
    bool has_analytic() const { return static_cast<bool>(fz_); }

    // f_zzbar = Delta f / 4; analytic closure when installed, else the interior
    // Laplacian stencil (throws StencilError at u-boundary rows).
    cplx f_zzbar(int i, int j) const;

    // Wirtinger derivatives at a node. Interior nodes use centered stencils in
    // (u, theta) mapped by d/dz = e^{-(u + i theta)} (d_u - i d_theta) / 2;
    // u-boundary nodes fall back to one-sided differences and flag the path.
    Wirtinger wirtinger(int i, int j) const;

    // Raw grid partials (centered interior, one-sided at u-boundaries).
    cplx d_u(int i, int j) const;
    cplx d_theta(int i, int j) const;

private:
    PolarGrid grid_;
    std::vector<cplx> samples_;
    std::function<cplx(cplx)> fz_, fzbar_, fzzbar_;
};

// Grid-sampled real field (heights, conformal factors, dilatations).
class ScalarField {
public:
    ScalarField(PolarGrid grid, std::vector<double> samples);
    ScalarField(PolarGrid grid, const std::function<double(cplx)>& fn);

    const PolarGrid& grid() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    double at(int i, int j) const { return samples_[grid_.idx(i, j)]; }
    double& at(int i, int j) { return samples_[grid_.idx(i, j)]; }

    double d_u(int i, int j) const;
    double d_theta(int i, int j) const;

    // Cartesian gradient as a complex number g_x + i g_y.
    cplx gradient(int i, int j) const;

private:
    PolarGrid grid_;
    std::vector<double> samples_;
};

// Laplacian at an interior node: Delta f = e^{-2u} (f_uu + f_tt).
// Throws StencilError on u-boundary rows.
cplx laplacian(const ComplexField& field, int i, int j);
double laplacian(const ScalarField& field, int i, int j);

// Divergence of the 2-vector field V stored as V_x + i V_y:
// div V = 2 Re d/dz (V_x + i V_y). Interior nodes only.
double divergence(const ComplexField& vfield, int i, int j);

// CSV dump (header "u,theta,re,im", row-major with u slow).
void dump_field_csv(const ComplexField& field, std::ostream& out);

}  // namespace minigraph
