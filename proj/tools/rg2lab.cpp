// rg2lab - numerical laboratory for the two-loop renormalization group flow:
// constant-curvature scale factors, 3D fixed points, the cigar soliton, and
// locally homogeneous geometries, with CSV/SVG output and a run manifest.

#include "rg2/cigar.hpp"
#include "rg2/constant_curvature.hpp"
#include "rg2/curvature3d.hpp"
#include "rg2/homogeneous.hpp"
#include "rg2/io.hpp"
#include "rg2/lambert_w.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <stdexcept>

namespace {

using rg2::io::format_double;

struct CommonFlags {
    std::string out_dir = ".";
    bool csv = true;
    bool svg = false;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::string manifest_path; // default: <out-dir>/manifest.json
};

void add_common(CLI::App* cmd, CommonFlags& cf) {
    cmd->add_option("--out-dir", cf.out_dir, "Output directory (created if missing)");
    cmd->add_flag("--csv,!--no-csv", cf.csv, "Write CSV output (default on)");
    cmd->add_flag("--svg", cf.svg, "Write SVG plot output");
    cmd->add_option("--rel-tol", cf.rel_tol, "Integrator relative tolerance");
    cmd->add_option("--abs-tol", cf.abs_tol, "Integrator absolute tolerance");
    cmd->add_option("--manifest", cf.manifest_path, "Manifest path (default <out-dir>/manifest.json)");
}

rg2::IntegratorOptions options_of(const CommonFlags& cf) {
    rg2::IntegratorOptions opts;
    opts.rel_tol = cf.rel_tol;
    opts.abs_tol = cf.abs_tol;
    return opts;
}

std::string out_path(const CommonFlags& cf, const std::string& name) {
    return (std::filesystem::path(cf.out_dir) / name).string();
}

void finish_manifest(const CommonFlags& cf, rg2::io::RunManifest& man) {
    std::filesystem::create_directories(cf.out_dir);
    man.tolerances["rel_tol"] = format_double(cf.rel_tol);
    man.tolerances["abs_tol"] = format_double(cf.abs_tol);
    const std::string path =
        cf.manifest_path.empty() ? out_path(cf, "manifest.json") : cf.manifest_path;
    rg2::io::write_manifest(path, man);
}

int run_constant_curvature(const CommonFlags& cf, double K, int n, double alpha, double t_end) {
    std::filesystem::create_directories(cf.out_dir);
    rg2::ConstantCurvatureProblem prob{K, {alpha, n}, 1.0};
    const auto regime = rg2::classify_regime(K, prob.params);
    const auto traj = rg2::evolve_phi(prob, t_end, options_of(cf));
    const bool closed_form_defined = K != 0.0 && 2.0 + alpha * K != 0.0;

    rg2::io::RunManifest man;
    man.command = "constant-curvature";
    man.parameters = {{"K", format_double(K)},
                      {"n", std::to_string(n)},
                      {"alpha", format_double(alpha)},
                      {"t_end", format_double(t_end)}};

    if (cf.csv) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(traj.times.size());
        for (size_t i = 0; i < traj.times.size(); ++i) {
            const double t = traj.times[i];
            const double phi = traj.states[i][0];
            double cf_phi = std::numeric_limits<double>::quiet_NaN();
            double resid = std::numeric_limits<double>::quiet_NaN();
            if (closed_form_defined) {
                try {
                    cf_phi = rg2::phi_closed_form(t, prob);
                } catch (const std::domain_error&) {
                }
                try {
                    resid = rg2::phi_implicit_residual(phi, t, prob);
                } catch (const std::domain_error&) {
                }
            }
            rows.push_back({format_double(t), format_double(phi), format_double(cf_phi),
                            format_double(resid), rg2::to_string(regime)});
        }
        const auto path = out_path(cf, "trajectory.csv");
        rg2::io::write_csv(path, {"t", "phi", "phi_closed_form", "implicit_residual", "regime"},
                           rows);
        man.artifacts.push_back(path);
    }
    if (cf.svg) {
        rg2::io::Series ode_series{"phi (ode)", "#1f77b4", traj.times, {}};
        for (const auto& s : traj.states) ode_series.y.push_back(s[0]);
        std::vector<rg2::io::Series> series{ode_series};
        if (closed_form_defined) {
            rg2::io::Series closed{"phi (closed form)", "#d62728", {}, {}};
            for (double t : traj.times) {
                try {
                    const double v = rg2::phi_closed_form(t, prob);
                    closed.x.push_back(t);
                    closed.y.push_back(v);
                } catch (const std::domain_error&) {
                    break;
                }
            }
            series.push_back(std::move(closed));
        }
        const auto path = out_path(cf, "trajectory.svg");
        rg2::io::write_svg_lines(path, "scale factor evolution", "t", "phi", series);
        man.artifacts.push_back(path);
    }

    std::cout << "regime: " << rg2::to_string(regime) << "\n";
    if (const auto T = rg2::extinction_time(prob))
        std::cout << "extinction time (closed form): " << format_double(*T) << "\n";
    if (traj.termination.kind == rg2::TerminationKind::Event)
        std::cout << "extinction event at t = " << format_double(traj.termination.event_time)
                  << "\n";
    finish_manifest(cf, man);
    if (traj.termination.kind == rg2::TerminationKind::StepSizeUnderflow) {
        std::cerr << "error: step size underflow at t = " << format_double(traj.final_time())
                  << "\n";
        return 3;
    }
    return 0;
}

int run_fixed_points(const CommonFlags& cf, double alpha, int seed_grid) {
    std::filesystem::create_directories(cf.out_dir);
    const auto points = rg2::solve_fixed_points(alpha, seed_grid);

    rg2::io::RunManifest man;
    man.command = "fixed-points";
    man.parameters = {{"alpha", format_double(alpha)}, {"seed_grid", std::to_string(seed_grid)}};

    if (cf.csv) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& fp : points) {
            const auto res = rg2::fixed_point_residual(fp.ricci, alpha);
            const double norm = std::sqrt(res[0] * res[0] + res[1] * res[1] + res[2] * res[2]);
            const auto sect = rg2::sectional_from_ricci(fp.ricci);
            rows.push_back({format_double(fp.ricci.lambda), format_double(fp.ricci.mu),
                            format_double(fp.ricci.nu), rg2::to_string(fp.cls),
                            format_double(norm),
                            rg2::kn_local_homogeneity(fp.ricci) ? "true" : "false",
                            rg2::check_parabolicity(sect, alpha) ? "true" : "false"});
        }
        const auto path = out_path(cf, "fixed_points.csv");
        rg2::io::write_csv(
            path, {"lambda", "mu", "nu", "class", "residual_norm", "locally_homogeneous",
                   "parabolicity"},
            rows);
        man.artifacts.push_back(path);
    }
    if (cf.svg) {
        std::vector<rg2::io::Series> series;
        const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
        for (size_t i = 0; i < points.size(); ++i) {
            const auto v = points[i].ricci.sorted();
            series.push_back({rg2::to_string(points[i].cls), colors[i % 6],
                              {1.0, 2.0, 3.0},
                              {v[0], v[1], v[2]}});
        }
        const auto path = out_path(cf, "fixed_points.svg");
        rg2::io::write_svg_lines(path, "fixed point Ricci eigenvalues", "eigenvalue index",
                                 "value", series);
        man.artifacts.push_back(path);
    }

    std::cout << points.size() << " fixed point families\n";
    for (const auto& fp : points)
        std::cout << "  (" << format_double(fp.ricci.lambda) << ", " << format_double(fp.ricci.mu)
                  << ", " << format_double(fp.ricci.nu) << ")  " << rg2::to_string(fp.cls) << "\n";
    finish_manifest(cf, man);
    return 0;
}

int run_cigar(const CommonFlags& cf, double c, double alpha, double s_max, bool compare) {
    std::filesystem::create_directories(cf.out_dir);
    const rg2::CigarParams params{c, alpha};
    const auto prof = rg2::integrate_cigar(params, s_max, options_of(cf));
    const double residual = rg2::soliton_residual(prof, params);
    const auto [psi, kpsi] = rg2::ricci_cigar_profile(c, prof.s);

    rg2::io::RunManifest man;
    man.command = "cigar";
    man.parameters = {{"c", format_double(c)},
                      {"alpha", format_double(alpha)},
                      {"s_max", format_double(s_max)},
                      {"compare", compare ? "true" : "false"}};

    if (cf.csv) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(prof.s.size());
        for (size_t i = 0; i < prof.s.size(); ++i)
            rows.push_back({format_double(prof.s[i]), format_double(prof.phi[i]),
                            format_double(prof.v[i]), format_double(prof.K[i]),
                            format_double(prof.f[i]), format_double(psi[i]),
                            format_double(kpsi[i])});
        const auto path = out_path(cf, "cigar.csv");
        rg2::io::write_csv(path, {"s", "phi", "v", "K", "f", "psi", "K_psi"}, rows);
        man.artifacts.push_back(path);
    }
    if (cf.svg) {
        std::vector<rg2::io::Series> series{{"phi", "#1f77b4", prof.s, prof.phi}};
        if (compare) series.push_back({"psi (Ricci)", "#d62728", prof.s, psi});
        const auto path = out_path(cf, "cigar.svg");
        rg2::io::write_svg_lines(path, "cigar soliton profile", "s", "profile radius", series);
        man.artifacts.push_back(path);
    }

    std::cout << "max soliton residual: " << format_double(residual) << "\n";
    if (compare) {
        double gap = 0.0;
        for (size_t i = 0; i < prof.s.size(); ++i)
            gap = std::max(gap, std::abs(prof.phi[i] - psi[i]));
        std::cout << "sup gap to Ricci cigar: " << format_double(gap) << "\n";
    }
    finish_manifest(cf, man);
    return 0;
}

int run_phase_plane(const CommonFlags& cf, const std::string& family_name, double alpha,
                    double a_min, double a_max, double b_min, double b_max, int grid_n,
                    double t_horizon) {
    std::filesystem::create_directories(cf.out_dir);
    const auto family = rg2::milnor_family_from_string(family_name);
    std::vector<double> a_values(grid_n), b_values(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double f = grid_n == 1 ? 0.0 : static_cast<double>(i) / (grid_n - 1);
        a_values[i] = a_min + f * (a_max - a_min);
        b_values[i] = b_min + f * (b_max - b_min);
    }
    const auto scan =
        rg2::phase_plane_scan(family, alpha, a_values, b_values, t_horizon, options_of(cf));

    rg2::io::RunManifest man;
    man.command = "phase-plane";
    man.parameters = {{"family", family_name},   {"alpha", format_double(alpha)},
                      {"a_min", format_double(a_min)}, {"a_max", format_double(a_max)},
                      {"b_min", format_double(b_min)}, {"b_max", format_double(b_max)},
                      {"grid_n", std::to_string(grid_n)}, {"t_horizon", format_double(t_horizon)}};

    if (cf.csv) {
        std::vector<std::vector<std::string>> rows;
        for (size_t ia = 0; ia < scan.a_values.size(); ++ia)
            for (size_t ib = 0; ib < scan.b_values.size(); ++ib)
                rows.push_back({format_double(scan.a_values[ia]),
                                format_double(scan.b_values[ib]),
                                rg2::to_string(scan.at(ia, ib)),
                                scan.boundary[ia * scan.b_values.size() + ib] ? "1" : "0"});
        const auto path = out_path(cf, "phase_plane.csv");
        rg2::io::write_csv(path, {"A0", "B0", "class", "boundary"}, rows);
        man.artifacts.push_back(path);
    }
    if (cf.svg) {
        const std::vector<rg2::io::RasterClass> classes{{"FiniteTimeShrinker", "#d62728"},
                                                        {"ImmortalCigar", "#1f77b4"},
                                                        {"ImmortalPancake", "#2ca02c"},
                                                        {"Static", "#cccccc"},
                                                        {"Indeterminate", "#9467bd"}};
        std::vector<int> ids(scan.cells.size());
        for (size_t i = 0; i < scan.cells.size(); ++i) ids[i] = static_cast<int>(scan.cells[i]);
        const auto path = out_path(cf, "phase_plane.svg");
        rg2::io::write_svg_raster(path, std::string("phase plane: ") + family_name, "A0",
                                  "B0 = C0", scan.a_values, scan.b_values, ids, classes);
        man.artifacts.push_back(path);
    }

    std::map<std::string, int> counts;
    for (const auto c : scan.cells) ++counts[rg2::to_string(c)];
    for (const auto& [name, count] : counts) std::cout << name << ": " << count << "\n";
    finish_manifest(cf, man);
    return 0;
}

int run_homogeneous(const CommonFlags& cf, const std::string& family_name, double alpha, double A,
                    double B, double C, double t_end) {
    std::filesystem::create_directories(cf.out_dir);
    const auto family = rg2::milnor_family_from_string(family_name);
    const auto geom = rg2::make_geometry(family, A, B, C);
    const auto traj = rg2::evolve_homogeneous(geom, alpha, t_end, options_of(cf));

    rg2::io::RunManifest man;
    man.command = "homogeneous";
    man.parameters = {{"family", family_name}, {"alpha", format_double(alpha)},
                      {"A", format_double(A)}, {"B", format_double(B)},
                      {"C", format_double(C)}, {"t_end", format_double(t_end)}};

    if (cf.csv) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(traj.times.size());
        for (size_t i = 0; i < traj.times.size(); ++i)
            rows.push_back({format_double(traj.times[i]), format_double(traj.states[i][0]),
                            format_double(traj.states[i][1]), format_double(traj.states[i][2])});
        const auto path = out_path(cf, "homogeneous.csv");
        rg2::io::write_csv(path, {"t", "A", "B", "C"}, rows);
        man.artifacts.push_back(path);
    }
    if (cf.svg) {
        rg2::io::Series sa{"A", "#1f77b4", traj.times, {}}, sb{"B", "#d62728", traj.times, {}},
            sc{"C", "#2ca02c", traj.times, {}};
        for (const auto& s : traj.states) {
            sa.y.push_back(s[0]);
            sb.y.push_back(s[1]);
            sc.y.push_back(s[2]);
        }
        const auto path = out_path(cf, "homogeneous.svg");
        rg2::io::write_svg_lines(path, std::string("homogeneous flow: ") + family_name, "t",
                                 "metric coefficient", {sa, sb, sc});
        man.artifacts.push_back(path);
    }

    std::cout << "classification: " << rg2::to_string(rg2::classify_asymptotics(traj)) << "\n";
    if (traj.termination.kind == rg2::TerminationKind::Event)
        std::cout << "extinction event at t = " << format_double(traj.termination.event_time)
                  << "\n";
    else if (traj.termination.kind == rg2::TerminationKind::StepSizeUnderflow)
        std::cout << "step size underflow at t = " << format_double(traj.final_time()) << "\n";
    finish_manifest(cf, man);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the two-loop renormalization group flow"};
    app.set_version_flag("--version", rg2::io::kToolVersion);
    app.require_subcommand(1);

    CommonFlags cc_cf, fp_cf, cg_cf, pp_cf, hg_cf;

    auto* cc = app.add_subcommand("constant-curvature", "scale-factor flow phi(t) g_K");
    double cc_K = 1.0, cc_alpha = 1.0, cc_tend = 1.0;
    int cc_n = 3;
    cc->add_option("--K", cc_K, "curvature of the reference metric");
    cc->add_option("--n", cc_n, "dimension (>= 2)");
    cc->add_option("--alpha", cc_alpha, "coupling constant");
    cc->add_option("--t-end", cc_tend, "integration horizon");
    add_common(cc, cc_cf);

    auto* fp = app.add_subcommand("fixed-points", "3D fixed point families");
    double fp_alpha = 1.0;
    int fp_seed_grid = 17;
    fp->add_option("--alpha", fp_alpha, "coupling constant (nonzero)");
    fp->add_option("--seed-grid", fp_seed_grid, "Newton seeds per axis");
    add_common(fp, fp_cf);

    auto* cg = app.add_subcommand("cigar", "2D steady gradient soliton profile");
    double cg_c = 1.0, cg_alpha = 1.0, cg_smax = 20.0;
    bool cg_compare = false;
    cg->add_option("--c", cg_c, "soliton constant (> 0)");
    cg->add_option("--alpha", cg_alpha, "coupling constant (>= 0; 0 = Ricci flow)");
    cg->add_option("--s-max", cg_smax, "arclength horizon");
    cg->add_flag("--compare", cg_compare, "include the Ricci cigar overlay");
    add_common(cg, cg_cf);

    auto* pp = app.add_subcommand("phase-plane", "classify symmetric homogeneous initial data");
    std::string pp_family = "sol";
    double pp_alpha = 0.01, pp_amin = 0.001, pp_amax = 0.02, pp_bmin = 0.5, pp_bmax = 2.0,
           pp_thor = 1000.0;
    int pp_grid = 40;
    pp->add_option("--family", pp_family, "sol | su2 | sl2r | euclidean");
    pp->add_option("--alpha", pp_alpha, "coupling constant");
    pp->add_option("--a-min", pp_amin, "A0 range lower end");
    pp->add_option("--a-max", pp_amax, "A0 range upper end");
    pp->add_option("--b-min", pp_bmin, "B0 = C0 range lower end");
    pp->add_option("--b-max", pp_bmax, "B0 = C0 range upper end");
    pp->add_option("--grid-n", pp_grid, "grid points per axis");
    pp->add_option("--t-horizon", pp_thor, "immortality horizon");
    add_common(pp, pp_cf);

    auto* hg = app.add_subcommand("homogeneous", "flow of one homogeneous geometry");
    std::string hg_family = "nil";
    double hg_alpha = 1.0, hg_A = 1.0, hg_B = 1.0, hg_C = 1.0, hg_tend = 10.0;
    hg->add_option("--family", hg_family, "su2 | sl2r | sol | nil | euclidean | h3 | h2xr");
    hg->add_option("--alpha", hg_alpha, "coupling constant");
    hg->add_option("--A", hg_A, "initial coefficient A");
    hg->add_option("--B", hg_B, "initial coefficient B");
    hg->add_option("--C", hg_C, "initial coefficient C");
    hg->add_option("--t-end", hg_tend, "integration horizon");
    add_common(hg, hg_cf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (cc->parsed()) return run_constant_curvature(cc_cf, cc_K, cc_n, cc_alpha, cc_tend);
        if (fp->parsed()) return run_fixed_points(fp_cf, fp_alpha, fp_seed_grid);
        if (cg->parsed()) return run_cigar(cg_cf, cg_c, cg_alpha, cg_smax, cg_compare);
        if (pp->parsed())
            return run_phase_plane(pp_cf, pp_family, pp_alpha, pp_amin, pp_amax, pp_bmin, pp_bmax,
                                   pp_grid, pp_thor);
        if (hg->parsed())
            return run_homogeneous(hg_cf, hg_family, hg_alpha, hg_A, hg_B, hg_C, hg_tend);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
