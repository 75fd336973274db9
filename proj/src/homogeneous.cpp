#include "rg2/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rg2 {

const char* to_string(MilnorFamily f) {
    switch (f) {
    case MilnorFamily::SU2: return "su2";
    case MilnorFamily::SL2R: return "sl2r";
    case MilnorFamily::Sol: return "sol";
    case MilnorFamily::Nil: return "nil";
    case MilnorFamily::Euclidean: return "euclidean";
    case MilnorFamily::H3: return "h3";
    case MilnorFamily::H2xR: return "h2xr";
    }
    return "?";
}

MilnorFamily milnor_family_from_string(const std::string& name) {
    if (name == "su2") return MilnorFamily::SU2;
    if (name == "sl2r") return MilnorFamily::SL2R;
    if (name == "sol") return MilnorFamily::Sol;
    if (name == "nil") return MilnorFamily::Nil;
    if (name == "euclidean") return MilnorFamily::Euclidean;
    if (name == "h3") return MilnorFamily::H3;
    if (name == "h2xr") return MilnorFamily::H2xR;
    throw std::invalid_argument("unknown geometry family: " + name);
}

const char* to_string(AsymptoticsClass c) {
    switch (c) {
    case AsymptoticsClass::FiniteTimeShrinker: return "FiniteTimeShrinker";
    case AsymptoticsClass::ImmortalCigar: return "ImmortalCigar";
    case AsymptoticsClass::ImmortalPancake: return "ImmortalPancake";
    case AsymptoticsClass::Static: return "Static";
    case AsymptoticsClass::Indeterminate: return "Indeterminate";
    }
    return "?";
}

MilnorGeometry make_geometry(MilnorFamily family, double A, double B, double C) {
    if (!(A > 0.0 && B > 0.0 && C > 0.0))
        throw std::invalid_argument("make_geometry: metric coefficients must be positive");
    MilnorGeometry g;
    g.family = family;
    g.A = A;
    g.B = B;
    g.C = C;
    switch (family) {
    case MilnorFamily::SU2: g.c1 = g.c2 = g.c3 = 2.0; break;
    case MilnorFamily::SL2R: g.c1 = -2.0, g.c2 = g.c3 = 2.0; break;
    case MilnorFamily::Sol: g.c1 = 0.0, g.c2 = 1.0, g.c3 = -1.0; break;
    case MilnorFamily::Nil: g.c1 = 1.0, g.c2 = g.c3 = 0.0; break;
    case MilnorFamily::Euclidean: break;
    case MilnorFamily::H3:
        if (A != B || B != C) throw std::invalid_argument("make_geometry: H3 requires A = B = C");
        break;
    case MilnorFamily::H2xR:
        if (A != B) throw std::invalid_argument("make_geometry: H2xR requires A = B");
        break;
    }
    return g;
}

RicciEigenvalues milnor_ricci(const MilnorGeometry& geom) {
    if (!(geom.A > 0.0 && geom.B > 0.0 && geom.C > 0.0))
        throw std::invalid_argument("milnor_ricci: metric coefficients must be positive");

    switch (geom.family) {
    case MilnorFamily::H3:
        // Reference curvature -1 scaled by A: sectional -1/A, Ricci -2/A.
        return {-2.0 / geom.A, -2.0 / geom.A, -2.0 / geom.A};
    case MilnorFamily::H2xR:
        // Hyperbolic factor on directions 1, 2; flat line on direction 3.
        return {-1.0 / geom.A, -1.0 / geom.A, 0.0};
    default:
        break;
    }

    // Structure constants of the orthonormalized frame f_i = e_i / sqrt(X_i).
    const double a1 = geom.c1 * std::sqrt(geom.A / (geom.B * geom.C));
    const double a2 = geom.c2 * std::sqrt(geom.B / (geom.C * geom.A));
    const double a3 = geom.c3 * std::sqrt(geom.C / (geom.A * geom.B));
    const double half_sum = 0.5 * (a1 + a2 + a3);
    const double m1 = half_sum - a1;
    const double m2 = half_sum - a2;
    const double m3 = half_sum - a3;
    return {2.0 * m2 * m3, 2.0 * m3 * m1, 2.0 * m1 * m2};
}

std::array<double, 3> rg2_rhs_homogeneous(const MilnorGeometry& geom, double alpha) {
    const RicciEigenvalues rc = milnor_ricci(geom);
    const auto b = rm2_eigen_from_ricci(rc);
    return {(-2.0 * rc.lambda - 0.5 * alpha * b[0]) * geom.A,
            (-2.0 * rc.mu - 0.5 * alpha * b[1]) * geom.B,
            (-2.0 * rc.nu - 0.5 * alpha * b[2]) * geom.C};
}

Trajectory evolve_homogeneous(const MilnorGeometry& geom, double alpha, double t_end,
                              const IntegratorOptions& opts) {
    const VectorField field = [geom, alpha](double, const std::vector<double>& y,
                                            std::vector<double>& dy) {
        if (y[0] <= 1e-12 || y[1] <= 1e-12 || y[2] <= 1e-12) throw FieldDomainError{};
        MilnorGeometry g = geom;
        g.A = y[0];
        g.B = y[1];
        g.C = y[2];
        const auto rhs = rg2_rhs_homogeneous(g, alpha);
        dy[0] = rhs[0];
        dy[1] = rhs[1];
        dy[2] = rhs[2];
    };
    const EventFunction extinction = [](double, const std::vector<double>& y) {
        return std::min({y[0], y[1], y[2]}) - 1e-8;
    };
    return integrate_with_event(field, {geom.A, geom.B, geom.C}, 0.0, t_end, opts, extinction,
                                "extinction");
}

AsymptoticsClass classify_asymptotics(const Trajectory& traj) {
    const auto& x0 = traj.states.front();
    const auto& xf = traj.states.back();

    if (traj.termination.kind == TerminationKind::StepSizeUnderflow)
        return AsymptoticsClass::FiniteTimeShrinker; // blow-down
    if (traj.termination.kind == TerminationKind::Event) {
        bool all_collapsed = true;
        for (size_t i = 0; i < 3; ++i) all_collapsed = all_collapsed && xf[i] <= 1e-2 * x0[i];
        if (all_collapsed) return AsymptoticsClass::FiniteTimeShrinker;
        // fall through to the directional comparison below
    }

    double drift = 0.0;
    for (size_t i = 0; i < 3; ++i) drift = std::max(drift, std::abs(xf[i] / x0[i] - 1.0));
    if (drift < 1e-8) return AsymptoticsClass::Static;

    // Log-derivatives over the final decade, relative to their mean
    // (directions shrinking against the collective scaling).
    const double t_final = traj.times.back();
    const double t_dec = t_final / 10.0;
    size_t idx = 0;
    for (size_t i = 0; i < traj.times.size(); ++i)
        if (traj.times[i] <= t_dec) idx = i;
    const double dt = t_final - traj.times[idx];
    if (!(dt > 0.0)) return AsymptoticsClass::Indeterminate;

    std::array<double, 3> slope{};
    for (size_t i = 0; i < 3; ++i)
        slope[i] = (std::log(xf[i]) - std::log(traj.states[idx][i])) / dt;
    const double mean = (slope[0] + slope[1] + slope[2]) / 3.0;
    int shrinking = 0;
    for (double s : slope)
        if (s - mean < -1e-6) ++shrinking;
    if (shrinking == 1) return AsymptoticsClass::ImmortalCigar;
    if (shrinking == 2) return AsymptoticsClass::ImmortalPancake;
    return AsymptoticsClass::Indeterminate;
}

PhasePlaneScan phase_plane_scan(MilnorFamily family, double alpha,
                                const std::vector<double>& a_values,
                                const std::vector<double>& b_values, double t_horizon,
                                const IntegratorOptions& opts) {
    if (family != MilnorFamily::Sol && family != MilnorFamily::SU2 &&
        family != MilnorFamily::SL2R && family != MilnorFamily::Euclidean)
        throw std::invalid_argument("phase_plane_scan: family must be sol, su2, sl2r or euclidean");
    if (a_values.empty() || b_values.empty())
        throw std::invalid_argument("phase_plane_scan: grid must be nonempty");

    PhasePlaneScan scan;
    scan.a_values = a_values;
    scan.b_values = b_values;
    scan.cells.resize(a_values.size() * b_values.size());
    scan.boundary.assign(scan.cells.size(), 0);

    for (size_t ia = 0; ia < a_values.size(); ++ia)
        for (size_t ib = 0; ib < b_values.size(); ++ib) {
            const auto geom = make_geometry(family, a_values[ia], b_values[ib], b_values[ib]);
            const Trajectory traj = evolve_homogeneous(geom, alpha, t_horizon, opts);
            scan.cells[ia * b_values.size() + ib] = classify_asymptotics(traj);
        }

    const size_t na = a_values.size(), nb = b_values.size();
    for (size_t ia = 0; ia < na; ++ia)
        for (size_t ib = 0; ib < nb; ++ib) {
            const AsymptoticsClass c = scan.cells[ia * nb + ib];
            const bool differs = (ia > 0 && scan.cells[(ia - 1) * nb + ib] != c) ||
                                 (ia + 1 < na && scan.cells[(ia + 1) * nb + ib] != c) ||
                                 (ib > 0 && scan.cells[ia * nb + ib - 1] != c) ||
                                 (ib + 1 < nb && scan.cells[ia * nb + ib + 1] != c);
            scan.boundary[ia * nb + ib] = differs ? 1 : 0;
        }
    return scan;
}

} // namespace rg2
