// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] must point at the rg2lab binary (used by the CLI
// determinism criterion).

#include "rg2/cigar.hpp"
#include "rg2/constant_curvature.hpp"
#include "rg2/curvature3d.hpp"
#include "rg2/homogeneous.hpp"
#include "rg2/io.hpp"
#include "rg2/lambert_w.hpp"
#include "rg2/ode.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;
using namespace rg2;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 1 -----------------------------------------------------------

void criterion_lambert_round_trip() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double bp = -std::exp(-1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = unit(rng);
        const double z = (i % 2) ? bp + (20.0 - bp) * u : std::pow(10.0, 10.0 * u);
        const double w = lambert_w(WBranch::Principal, z);
        worst = std::max(worst, std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z)));
    }
    for (int i = 0; i < 10000; ++i) {
        const double z = bp * (1.0 - unit(rng) * (1.0 - 1e-12));
        const double w = lambert_w(WBranch::MinusOne, z);
        worst = std::max(worst, std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z)));
    }
    const double dt = seconds_since(t0);
    report(1, "Lambert W round trip", worst <= 1e-12 && dt < 1.0,
           "max residual " + io::format_double(worst) + ", " + io::format_double(dt) + " s");
}

// --- criterion 2 -----------------------------------------------------------

void criterion_closed_form_instances() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_gap = 0.0, worst_resid = 0.0;
    for (double K : {1.0, -6.0, -0.5}) {
        const ConstantCurvatureProblem prob{K, {1.0, 3}, 1.0};
        const auto T = extinction_time(prob);
        const double t_max = T ? 0.95 * *T : 2.0;
        for (int i = 1; i <= 100; ++i) {
            const double t = t_max * i / 100.0;
            const auto traj = evolve_phi(prob, t);
            const double phi = traj.states.back()[0];
            worst_gap = std::max(worst_gap, std::abs(phi - phi_closed_form(t, prob)));
        }
        const auto traj = evolve_phi(prob, t_max);
        for (size_t i = 0; i < traj.times.size(); ++i)
            worst_resid = std::max(
                worst_resid,
                std::abs(phi_implicit_residual(traj.states[i][0], traj.times[i], prob)));
    }
    const double dt = seconds_since(t0);
    report(2, "closed forms for the three reference instances",
           worst_gap <= 1e-8 && worst_resid <= 1e-6 && dt < 5.0,
           "max |ode - closed| " + io::format_double(worst_gap) + ", max implicit residual " +
               io::format_double(worst_resid) + ", " + io::format_double(dt) + " s");
}

// --- criterion 3 -----------------------------------------------------------

void criterion_extinction_times() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::array<double, 3>> combos{
        {0.5, 0.1, 2}, {0.5, 1.0, 3},  {1.0, 0.1, 3},  {1.0, 1.0, 2},   {1.0, 1.0, 3},
        {1.0, 1.0, 4}, {2.0, 0.1, 4},  {2.0, 1.0, 3},  {3.0, 1.0, 2},   {0.7, 0.5, 3},
        {1.5, 0.25, 3}, {2.5, 1.0, 2}, {-6.0, 1.0, 3}, {-3.0, 1.0, 2},  {-2.5, 1.0, 3},
        {-10.0, 0.5, 3}, {-4.2, 0.6, 2}, {-30.0, 0.1, 3}, {-8.0, 1.0, 4}, {-12.0, 0.25, 3}};
    double worst = 0.0;
    bool beats_ricci = true;
    int tested = 0;
    for (const auto& [K, alpha, n_raw] : combos) {
        const int n = static_cast<int>(n_raw);
        const ConstantCurvatureProblem prob{K, {alpha, n}, 1.0};
        const auto T = extinction_time(prob);
        if (!T || !(*T > 0.0)) {
            beats_ricci = false;
            continue;
        }
        ++tested;
        const auto traj = evolve_phi(prob, 2.0 * *T + 0.1);
        if (traj.termination.kind != TerminationKind::Event) {
            worst = std::numeric_limits<double>::infinity();
            continue;
        }
        worst = std::max(worst, std::abs(traj.termination.event_time - *T));
        if (K > 0.0 && !(*T < 1.0 / (2.0 * K * (n - 1)))) beats_ricci = false;
    }
    const double dt = seconds_since(t0);
    report(3, "extinction times across 20 collapsing regimes",
           tested == 20 && worst <= 1e-6 && beats_ricci && dt < 10.0,
           "max |event - formula| " + io::format_double(worst) + ", " + io::format_double(dt) +
               " s");
}

// --- criterion 4 -----------------------------------------------------------

// Scale-only surrogate flow for curvature data without a homogeneous model:
// eigenvalues respond to their own diagonal scaling as r_i = r_i(0)*X_i(0)/X_i.
double frozen_scaling_drift(const RicciEigenvalues& r0, double alpha, double t_end) {
    const VectorField field = [r0, alpha](double, const std::vector<double>& y,
                                          std::vector<double>& dy) {
        const RicciEigenvalues r{r0.lambda / y[0], r0.mu / y[1], r0.nu / y[2]};
        const auto b = rm2_eigen_from_ricci(r);
        dy[0] = (-2.0 * r.lambda - 0.5 * alpha * b[0]) * y[0];
        dy[1] = (-2.0 * r.mu - 0.5 * alpha * b[1]) * y[1];
        dy[2] = (-2.0 * r.nu - 0.5 * alpha * b[2]) * y[2];
    };
    const auto traj = integrate_adaptive(field, {1.0, 1.0, 1.0}, 0.0, t_end, {});
    double drift = 0.0;
    for (const auto& s : traj.states)
        for (double v : s) drift = std::max(drift, std::abs(v - 1.0));
    return drift;
}

void criterion_fixed_points() {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool pass = true;

    const auto points = solve_fixed_points(1.0);
    pass = pass && points.size() == 4;
    double worst_residual = 0.0;
    int non_homog = 0;
    for (const auto& fp : points) {
        const auto res = fixed_point_residual(fp.ricci, 1.0);
        worst_residual = std::max(
            worst_residual, std::sqrt(res[0] * res[0] + res[1] * res[1] + res[2] * res[2]));
        const bool kn = kn_local_homogeneity(fp.ricci);
        if (!kn) {
            ++non_homog;
            pass = pass && fp.ricci.sorted() == std::array<double, 3>{-4.0, -2.0, -2.0};
        }
    }
    pass = pass && worst_residual <= 1e-10 && non_homog == 1;

    // drift of the flow started at each family
    double worst_drift = 0.0;
    {
        const auto traj = evolve_homogeneous(make_geometry(MilnorFamily::Euclidean, 1, 1, 1), 1.0, 1.0);
        for (const auto& s : traj.states)
            for (double v : s) worst_drift = std::max(worst_drift, std::abs(v - 1.0));
    }
    for (auto family : {MilnorFamily::H3, MilnorFamily::H2xR}) {
        const auto geom = family == MilnorFamily::H3 ? make_geometry(family, 0.5, 0.5, 0.5)
                                                     : make_geometry(family, 0.5, 0.5, 1.0);
        const auto traj = evolve_homogeneous(geom, 1.0, 1.0);
        for (const auto& s : traj.states)
            for (size_t i = 0; i < 3; ++i)
                worst_drift =
                    std::max(worst_drift, std::abs(s[i] / traj.states.front()[i] - 1.0));
    }
    worst_drift = std::max(worst_drift, frozen_scaling_drift({-4.0, -2.0, -2.0}, 1.0, 1.0));
    pass = pass && worst_drift < 1e-8;

    // sphere families for negative coupling
    bool sphere = false, product = false;
    for (const auto& fp : solve_fixed_points(-1.0)) {
        sphere = sphere || fp.cls == FixedPointClass::Sphere_S3;
        product = product || fp.cls == FixedPointClass::Product_S2xR;
    }
    pass = pass && sphere && product;

    const double dt = seconds_since(t0);
    pass = pass && dt < 10.0;
    detail << "families " << points.size() << ", max residual "
           << io::format_double(worst_residual) << ", max drift "
           << io::format_double(worst_drift) << ", " << io::format_double(dt) << " s";
    report(4, "fixed-point completeness and classification", pass, detail.str());
}

// --- criterion 5 -----------------------------------------------------------

void criterion_rm2_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const RicciEigenvalues r{dist(rng), dist(rng), dist(rng)};
        const auto a = rm2_eigen_from_ricci(r);
        const auto b = rm2_brute_force(sectional_from_ricci(r));
        for (int k = 0; k < 3; ++k)
            worst = std::max(worst,
                             std::abs(a[k] - b[k]) / std::max({1.0, std::abs(a[k]), std::abs(b[k])}));
    }
    const double dt = seconds_since(t0);
    report(5, "Rm^2 identity vs literal contraction", worst <= 1e-12 && dt < 5.0,
           "max relative gap " + io::format_double(worst) + ", " + io::format_double(dt) + " s");
}

// --- criterion 6 -----------------------------------------------------------

void criterion_cigar() {
    const auto t0 = std::chrono::steady_clock::now();
    const double c = 1.0;
    bool pass = true;
    std::ostringstream detail;
    double prev_gap = std::numeric_limits<double>::infinity();
    double final_gap = 0.0;
    for (double alpha : {1.0, 0.1, 0.01, 0.001}) {
        const CigarParams p{c, alpha};
        const auto prof = integrate_cigar(p, 20.0);
        for (size_t i = 1; i < prof.v.size(); ++i)
            pass = pass && prof.v[i] < prof.v[i - 1] && prof.v[i] > 0.0;
        pass = pass && prof.K.back() <= 1e-3;
        pass = pass && soliton_residual(prof, p) <= 1e-8;
        const auto [psi, kpsi] = ricci_cigar_profile(c, prof.s);
        double gap = 0.0;
        for (size_t i = 0; i < prof.s.size(); ++i)
            gap = std::max(gap, std::abs(prof.phi[i] - psi[i]));
        pass = pass && gap < prev_gap;
        prev_gap = gap;
        final_gap = gap;
        const double k0 = cigar_curvature(1.0, p);
        pass = pass && std::abs(k0 - (c - 0.5 * c * c * alpha)) <= 0.75 * alpha * alpha;
    }
    pass = pass && final_gap <= 1e-2;
    const double dt = seconds_since(t0);
    pass = pass && dt < 30.0;
    detail << "gap at alpha=1e-3 " << io::format_double(final_gap) << ", "
           << io::format_double(dt) << " s";
    report(6, "cigar soliton profile family", pass, detail.str());
}

// --- criterion 7 -----------------------------------------------------------

void criterion_homogeneous_consistency() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream detail;

    double worst = 0.0;
    for (double alpha : {0.0, 1.0}) {
        const auto traj =
            evolve_homogeneous(make_geometry(MilnorFamily::SU2, 1.0, 1.0, 1.0), alpha, 1.0);
        pass = pass && traj.termination.kind == TerminationKind::Event;
        const ConstantCurvatureProblem prob{1.0, {alpha, 3}, 1.0};
        for (size_t i = 0; i < traj.times.size(); ++i) {
            const double a = traj.states[i][0];
            if (a < 1e-4) continue;
            const double phi = alpha == 0.0 ? 1.0 - 4.0 * traj.times[i]
                                            : phi_closed_form(traj.times[i], prob);
            for (double comp : traj.states[i]) worst = std::max(worst, std::abs(comp - phi));
        }
        const double T_expected =
            alpha == 0.0 ? 0.25 : *extinction_time({1.0, {1.0, 3}, 1.0});
        pass = pass && std::abs(traj.termination.event_time - T_expected) <= 1e-6;
    }
    pass = pass && worst <= 1e-6;

    const auto nil_small =
        evolve_homogeneous(make_geometry(MilnorFamily::Nil, 1.0, 1.0, 1.0), 1e-3, 1000.0);
    pass = pass && nil_small.termination.kind == TerminationKind::ReachedHorizon;

    const auto nil_large =
        evolve_homogeneous(make_geometry(MilnorFamily::Nil, 1.0, 1.0, 1.0), 1e3, 1000.0);
    const bool nil_finite =
        nil_large.termination.kind != TerminationKind::ReachedHorizon &&
        nil_large.final_time() < 1000.0 &&
        classify_asymptotics(nil_large) == AsymptoticsClass::FiniteTimeShrinker;
    pass = pass && nil_finite;

    const double dt = seconds_since(t0);
    pass = pass && dt < 60.0;
    detail << "max |A - phi| " << io::format_double(worst) << ", nil horizons "
           << (nil_small.termination.kind == TerminationKind::ReachedHorizon ? "immortal" : "?")
           << "/" << (nil_finite ? "finite" : "?") << ", " << io::format_double(dt) << " s";
    report(7, "homogeneous flows against the scale-factor flow", pass, detail.str());
}

// --- criterion 8 -----------------------------------------------------------

void criterion_phase_plane() {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = 40;
    std::vector<double> as(n), bs(n);
    for (int i = 0; i < n; ++i) {
        as[i] = 0.001 + i * (0.02 - 0.001) / (n - 1);
        bs[i] = 0.5 + i * (2.0 - 0.5) / (n - 1);
    }
    const auto scan = phase_plane_scan(MilnorFamily::Sol, 0.01, as, bs, 1000.0);

    int shrinkers = 0, immortal = 0;
    for (auto c : scan.cells) {
        if (c == AsymptoticsClass::FiniteTimeShrinker)
            ++shrinkers;
        else
            ++immortal;
    }

    // contiguity of the empirical boundary: all flagged cells form one
    // 8-connected component
    std::vector<size_t> flagged;
    for (size_t i = 0; i < scan.boundary.size(); ++i)
        if (scan.boundary[i]) flagged.push_back(i);
    bool contiguous = !flagged.empty();
    if (contiguous) {
        std::vector<char> seen(scan.boundary.size(), 0);
        std::deque<size_t> queue{flagged.front()};
        seen[flagged.front()] = 1;
        size_t reached = 0;
        while (!queue.empty()) {
            const size_t cell = queue.front();
            queue.pop_front();
            ++reached;
            const long ia = static_cast<long>(cell) / n, ib = static_cast<long>(cell) % n;
            for (long da = -1; da <= 1; ++da)
                for (long db = -1; db <= 1; ++db) {
                    const long ja = ia + da, jb = ib + db;
                    if (ja < 0 || jb < 0 || ja >= n || jb >= n) continue;
                    const size_t idx = static_cast<size_t>(ja * n + jb);
                    if (scan.boundary[idx] && !seen[idx]) {
                        seen[idx] = 1;
                        queue.push_back(idx);
                    }
                }
        }
        contiguous = reached == flagged.size();
    }

    const double dt = seconds_since(t0);
    const bool pass = shrinkers > 0 && immortal > 0 && contiguous && dt < 300.0;
    std::ostringstream detail;
    detail << shrinkers << " shrinking / " << immortal << " immortal cells, boundary "
           << (contiguous ? "contiguous" : "fragmented") << ", " << io::format_double(dt) << " s";
    report(8, "symmetric Sol phase-plane dichotomy", pass, detail.str());
}

// --- criterion 9 -----------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_cli_determinism(const std::string& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream detail;
    const fs::path root = fs::temp_directory_path() / "rg2lab_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    const std::vector<std::pair<std::string, std::string>> invocations{
        {"constant-curvature", "--K 1 --n 3 --alpha 1 --t-end 1 --svg"},
        {"fixed-points", "--alpha 1 --seed-grid 9 --svg"},
        {"cigar", "--c 1 --alpha 0.5 --s-max 5 --compare --svg"},
        {"phase-plane",
         "--family sol --alpha 0.01 --a-min 0.002 --a-max 0.02 --b-min 0.5 --b-max 1.5 "
         "--grid-n 6 --t-horizon 50 --svg"},
        {"homogeneous", "--family nil --alpha 1 --A 1 --B 1 --C 1 --t-end 1 --svg"}};

    for (const auto& [sub, flags] : invocations) {
        const fs::path dir = root / sub;
        fs::create_directories(dir);
        const std::string cmd = cli + " " + sub + " " + flags + " --out-dir " + dir.string() +
                                " > " + (root / (sub + "_stdout.txt")).string() + " 2>&1";
        // the identical invocation twice; snapshot all bytes in between
        std::map<std::string, std::string> first_run;
        for (int run = 0; run < 2; ++run) {
            const int rc = std::system(cmd.c_str());
            if (rc != 0) {
                pass = false;
                detail << sub << " exited " << rc << "; ";
            }
            if (run == 0)
                for (const auto& entry : fs::directory_iterator(dir))
                    first_run[entry.path().filename().string()] = slurp(entry.path());
        }
        for (const auto& entry : fs::directory_iterator(dir)) {
            const auto name = entry.path().filename().string();
            auto it = first_run.find(name);
            if (it == first_run.end() || it->second != slurp(entry.path())) {
                pass = false;
                detail << sub << "/" << name << " differs between runs; ";
            }
        }
        // manifest lists exactly the produced artifacts
        const fs::path manifest = dir / "manifest.json";
        if (!fs::exists(manifest)) {
            pass = false;
            detail << sub << " missing manifest; ";
            continue;
        }
        const auto j = nlohmann::json::parse(slurp(manifest));
        size_t listed = 0;
        for (const auto& artifact : j["artifacts"]) {
            ++listed;
            if (!fs::exists(artifact.get<std::string>())) {
                pass = false;
                detail << sub << " manifest lists a missing file; ";
            }
        }
        size_t produced = 0;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.path().filename().string() != "manifest.json") ++produced;
        if (produced != listed) {
            pass = false;
            detail << sub << " manifest incomplete (" << listed << "/" << produced << "); ";
        }
    }
    const double dt = seconds_since(t0);
    pass = pass && dt < 60.0;
    detail << io::format_double(dt) << " s";
    report(9, "CLI determinism and manifest completeness", pass, detail.str());
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-rg2lab>\n";
        return 2;
    }
    criterion_lambert_round_trip();
    criterion_closed_form_instances();
    criterion_extinction_times();
    criterion_fixed_points();
    criterion_rm2_oracle();
    criterion_cigar();
    criterion_homogeneous_consistency();
    criterion_phase_plane();
    criterion_cli_determinism(argv[1]);
    std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
