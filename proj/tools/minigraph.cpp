#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "minigraph/bounds.hpp"
#include "minigraph/curvature.hpp"
#include "minigraph/errors.hpp"
#include "minigraph/io.hpp"
#include "minigraph/radial.hpp"
#include "minigraph/surface.hpp"

namespace {

using namespace minigraph;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitVerification = 4;

struct GridSpec {
    int n_u = 64;
    int n_theta = 64;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument(std::string(what) + " expects two comma-separated values");
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

BoundReport conformality_report(const ConformalImmersion& imm) {
    const PolarGrid& g = imm.grid();
    double sup = 0.0;
    for (int i = 0; i < g.n_u; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            ConformalityDefect d = conformality_defect(imm, i, j);
            sup = std::max({sup, std::abs(d.e_minus_g), std::abs(d.cross)});
        }
    BoundReport rep;
    rep.name = "conformality_defect";
    rep.lhs = sup;
    rep.rhs = 1e-8;
    rep.margin = rep.rhs - rep.lhs;
    return rep;
}

BoundReport kal_report(const ConformalImmersion& imm) {
    const PolarGrid& g = imm.grid();
    BoundReport rep;
    rep.name = "kal_bound";
    rep.margin = std::numeric_limits<double>::infinity();
    for (int i = 1; i < g.n_u - 1; ++i)
        for (int j = 0; j < g.n_theta; ++j) {
            CurvatureDecomposition d = curvature_decomposition(imm, i, j);
            if (!d.defined) continue;
            KalBound kb = kal_bound_check(imm, i, j);
            if (kb.margin < rep.margin) {
                rep.lhs = kb.K_abs;
                rep.rhs = kb.bound;
                rep.margin = kb.margin;
                rep.witness = "node (" + std::to_string(i) + ", " + std::to_string(j) + ")";
            }
        }
    return rep;
}

int cmd_catenoid(const std::string& metric_name, double c, const std::string& v_range,
                 double h0, const GridSpec& grid, const std::string& out_prefix,
                 bool write_obj) {
    MetricField metric = parse_metric(metric_name);
    auto [v1, v2] = parse_pair(v_range, "--v-range");
    if (!(v1 < v2)) throw std::invalid_argument("--v-range: need v1 < v2");
    if (c > 0.0) throw std::invalid_argument("catenoid needs c <= 0 (use the helicoid command)");

    double rate = c < 0.0 ? 2.0 * std::sqrt(-c) : 1.0;  // c = 0: v is read as log|z|
    double s1 = std::exp(v1 / rate), s2 = std::exp(v2 / rate);
    RadialProfile prof =
        solve_profile(metric, c, std::min(1.0, s1), std::max(1.0, s2));
    PolarGrid g(s1, s2, grid.n_u, grid.n_theta);
    ConformalImmersion imm = immersion_from_profile(prof, g, h0);

    {
        auto out = open_out(out_prefix + "surface.csv");
        dump_surface_csv(imm, out);
    }
    {
        auto out = open_out(out_prefix + "curvature.csv");
        dump_curvature_csv(imm, out);
    }
    if (write_obj) {
        auto out = open_out(out_prefix + "surface.obj");
        dump_surface_obj(imm, out);
    }

    std::vector<BoundReport> reports;
    if (c < 0.0) {
        double d = v2 - v1;
        BoundReport eq = equator_bound_report(imm, d, 0.5 * (std::log(s1) + std::log(s2)));
        eq.params["c_stored"] = c;
        eq.params["c_geom"] = c_from_geometry(d, std::log(s2 / s1));
        reports.push_back(std::move(eq));
        MinimalGraph graph =
            build_graph_radial(prof, h0,
                               PolarGrid(prof.p(s1), prof.p(s2), grid.n_u, grid.n_theta));
        FluxIdentityReport flux = flux_identity_check(graph, c);
        BoundReport fr;
        fr.name = "flux_identity";
        fr.lhs = flux.sup_defect;
        fr.rhs = 1e-8;
        fr.margin = fr.rhs - fr.lhs;
        fr.params["sup_divergence"] = flux.sup_divergence;
        reports.push_back(std::move(fr));
        reports.push_back(kal_report(imm));
    }
    reports.push_back(conformality_report(imm));
    auto out = open_out(out_prefix + "report.json");
    dump_reports_json(reports, out);
    std::cout << "wrote " << out_prefix << "{surface.csv, curvature.csv, report.json}\n";
    return kExitOk;
}

int cmd_helicoid(const std::string& metric_name, double c, const std::string& s_range,
                 double h0, const GridSpec& grid, const std::string& out_prefix,
                 bool write_obj) {
    if (!(c > 0.0)) throw std::invalid_argument("helicoid needs c > 0");
    MetricField metric = parse_metric(metric_name);
    auto [s1, s2] = parse_pair(s_range, "--s-range");
    RadialProfile prof = solve_profile(metric, c, std::min(1.0, s1), std::max(1.0, s2));
    PolarGrid g(s1, s2, grid.n_u, grid.n_theta);
    ConformalImmersion imm = immersion_from_profile(prof, g, h0);
    {
        auto out = open_out(out_prefix + "surface.csv");
        dump_surface_csv(imm, out);
    }
    {
        auto out = open_out(out_prefix + "curvature.csv");
        dump_curvature_csv(imm, out);
    }
    if (write_obj) {
        auto out = open_out(out_prefix + "surface.obj");
        dump_surface_obj(imm, out);
    }
    std::vector<BoundReport> reports{kal_report(imm), conformality_report(imm)};
    auto out = open_out(out_prefix + "report.json");
    dump_reports_json(reports, out);
    std::cout << "wrote " << out_prefix << "{surface.csv, curvature.csv, report.json}\n";
    return kExitOk;
}

int cmd_radial(const std::string& metric_name, double c, double s_min, double s_max,
               int samples, const std::string& out_prefix) {
    MetricField metric = parse_metric(metric_name);
    RadialProfile prof = solve_profile(metric, c, s_min, s_max);
    auto out = open_out(out_prefix + "profile.csv");
    dump_profile_csv(prof, samples, out);
    std::cout << "wrote " << out_prefix << "profile.csv (c = " << prof.c() << ")\n";
    return kExitOk;
}

int cmd_minimize(const std::string& metric_name, const std::string& domain,
                 const std::string& target, const GridSpec& grid, const MinimizeOptions& opts,
                 const std::string& out_prefix) {
    MetricField metric = parse_metric(metric_name);
    auto [dr, dR] = parse_pair(domain, "--domain");
    auto [tr, tR] = parse_pair(target, "--target");
    PolarGrid g(dr, dR, grid.n_u, grid.n_theta);
    MinimizeResult res = minimize_energy(g, tr, tR, metric, opts);

    {
        auto out = open_out(out_prefix + "map.csv");
        dump_field_csv(res.candidate.f, out);
    }
    {
        auto out = open_out(out_prefix + "trace.csv");
        dump_energy_trace_csv(res.energy_trace, out);
    }
    HopfFit fit = hopf_fit_c(res.candidate);
    std::vector<BoundReport> reports;
    BoundReport rep;
    rep.name = "hopf_fit";
    rep.lhs = fit.relative_deviation;
    rep.rhs = 0.05;
    rep.margin = rep.rhs - rep.lhs;
    rep.params["c"] = fit.c;
    rep.params["energy"] = res.energy;
    rep.params["sweeps"] = res.sweeps;
    rep.params["converged"] = res.converged ? 1.0 : 0.0;
    rep.params["fold_warning"] = res.fold_warning ? 1.0 : 0.0;
    reports.push_back(std::move(rep));
    {
        auto out = open_out(out_prefix + "hopf.json");
        dump_reports_json(reports, out);
    }
    std::cout << "energy " << res.energy << ", fitted c " << fit.c << ", sweeps " << res.sweeps
              << (res.converged ? "" : " (NOT converged)")
              << (res.fold_warning ? " [fold warning]" : "") << "\n";
    return res.converged ? kExitOk : kExitNonConvergence;
}

int cmd_verify(const std::string& suite, const GridSpec& grid, double tol,
               const std::string& out_path) {
    std::vector<BoundReport> reports = run_suite(suite, grid.n_u, grid.n_theta);
    if (out_path.empty()) {
        dump_reports_json(reports, std::cout);
    } else {
        auto out = open_out(out_path);
        dump_reports_json(reports, out);
    }
    int bad = 0;
    for (const BoundReport& r : reports)
        if (r.margin < -tol || !r.hypothesis_ok) {
            std::cerr << "FAILED: " << r.name << " margin " << r.margin << "\n";
            ++bad;
        }
    std::cout << reports.size() << " reports, " << bad << " failed\n";
    return bad == 0 ? kExitOk : kExitVerification;
}

int cmd_report() {
    std::vector<BoundReport> reports;
    auto add = [&](const std::string& n, double v) {
        BoundReport r;
        r.name = n;
        r.lhs = r.rhs = v;
        r.margin = 0.0;
        reports.push_back(std::move(r));
    };
    add("constants/phi0_slope_origin", FlatConstants::phi0_slope_origin);
    add("constants/phi0_slope_one", FlatConstants::phi0_slope_one);
    add("constants/heinz_c0", FlatConstants::heinz_c0);
    add("constants/c_tilde_0", FlatConstants::c_tilde_0);
    add("constants/c_star_0", FlatConstants::c_star_0);
    dump_reports_json(reports, std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal graphs in (Omega, p) x R via p-harmonic maps"};
    app.set_config("--config", "", "flat key=value config file");
    app.require_subcommand(1);

    std::string metric = "euclidean";
    std::string grid_text = "64,64";
    std::string out_prefix = "minigraph_";
    int workers = 1;
    app.add_option("--metric", metric,
                   "euclidean | sphere | hyperbolic | power:<k> | cigar:<a> | csv:<path>")
        ->capture_default_str();
    app.add_option("--grid", grid_text, "n_u,n_theta")->capture_default_str();
    app.add_option("--out", out_prefix, "output path prefix")->capture_default_str();
    app.add_option("--workers", workers, "worker count (1 = deterministic)")
        ->capture_default_str();

    auto* cat = app.add_subcommand("catenoid", "catenoidal surface, graph and reports");
    cat->fallthrough();
    double cat_c = -0.25, cat_h0 = 0.0;
    std::string cat_vrange = "0,2";
    bool cat_obj = false;
    cat->add_option("--c", cat_c, "Hopf constant (c <= 0)")->capture_default_str();
    cat->add_option("--v-range", cat_vrange, "height range v1,v2")->capture_default_str();
    cat->add_option("--h0", cat_h0, "height offset")->capture_default_str();
    cat->add_flag("--obj", cat_obj, "also write an OBJ mesh");

    auto* hel = app.add_subcommand("helicoid", "helicoidal surface and reports");
    hel->fallthrough();
    double hel_c = 0.25, hel_h0 = 0.0;
    std::string hel_srange = "1,2.718281828459045";
    bool hel_obj = false;
    hel->add_option("--c", hel_c, "Hopf constant (c > 0)")->capture_default_str();
    hel->add_option("--s-range", hel_srange, "domain radius range s1,s2")->capture_default_str();
    hel->add_option("--h0", hel_h0, "height offset")->capture_default_str();
    hel->add_flag("--obj", hel_obj, "also write an OBJ mesh");

    auto* rad = app.add_subcommand("radial", "radial harmonic-map profile");
    rad->fallthrough();
    double rad_c = -0.25, rad_smin = 1.0, rad_smax = 2.718281828459045;
    int rad_samples = 257;
    rad->add_option("--c", rad_c, "Hopf constant")->capture_default_str();
    rad->add_option("--s-min", rad_smin, "inner domain radius (<= 1)")->capture_default_str();
    rad->add_option("--s-max", rad_smax, "outer domain radius (>= 1)")->capture_default_str();
    rad->add_option("--samples", rad_samples, "CSV sample count")->capture_default_str();

    auto* mini = app.add_subcommand("minimize", "discrete energy minimizer between annuli");
    mini->fallthrough();
    std::string mini_domain = "0.5,1", mini_target = "0.7,1";
    MinimizeOptions mopts;
    mini->add_option("--domain", mini_domain, "domain annulus r,R")->capture_default_str();
    mini->add_option("--target", mini_target, "target annulus r,R")->capture_default_str();
    mini->add_option("--max-sweeps", mopts.max_sweeps)->capture_default_str();
    mini->add_option("--tol-energy", mopts.tol_energy)->capture_default_str();
    mini->add_option("--tol-grad", mopts.tol_grad)->capture_default_str();
    mini->add_option("--damping", mopts.damping)->capture_default_str();
    mini->add_option("--seed-rotation", mopts.seed_rotation)->capture_default_str();

    auto* ver = app.add_subcommand("verify", "run a verification sweep");
    ver->fallthrough();
    std::string ver_suite = "all", ver_out;
    double ver_tol = 1e-9;
    ver->add_option("--suite", ver_suite, "equator|schwarzpick|heinz|flux|bochner|all")
        ->capture_default_str();
    ver->add_option("--tol", ver_tol, "margin tolerance")->capture_default_str();
    ver->add_option("--json", ver_out, "write the JSON report here instead of stdout");

    auto* repc = app.add_subcommand("report", "print the pinned flat constants");
    repc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    GridSpec grid;
    try {
        auto [nu, nt] = parse_pair(grid_text, "--grid");
        grid.n_u = static_cast<int>(nu);
        grid.n_theta = static_cast<int>(nt);
        mopts.workers = workers;

        if (app.got_subcommand(cat))
            return cmd_catenoid(metric, cat_c, cat_vrange, cat_h0, grid, out_prefix, cat_obj);
        if (app.got_subcommand(hel))
            return cmd_helicoid(metric, hel_c, hel_srange, hel_h0, grid, out_prefix, hel_obj);
        if (app.got_subcommand(rad))
            return cmd_radial(metric, rad_c, rad_smin, rad_smax, rad_samples, out_prefix);
        if (app.got_subcommand(mini))
            return cmd_minimize(metric, mini_domain, mini_target, grid, mopts, out_prefix);
        if (app.got_subcommand(ver)) return cmd_verify(ver_suite, grid, ver_tol, ver_out);
        if (app.got_subcommand(repc)) return cmd_report();
    } catch (const AdmissibilityError& e) {
        std::cerr << "admissibility error (radialfamily): " << e.what() << "\n";
        return kExitConstruction;
    } catch (const TurningPointError& e) {
        std::cerr << "turning-point error (radialfamily): " << e.what() << "\n";
        return kExitConstruction;
    } catch (const NoSolutionError& e) {
        std::cerr << "no-solution error (radialfamily): " << e.what() << "\n";
        return kExitConstruction;
    } catch (const StencilError& e) {
        std::cerr << "stencil error (annulusgrid): " << e.what() << "\n";
        return kExitConstruction;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConstruction;
    }
    return kExitUsage;
}
