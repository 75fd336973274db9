#include "rg2/cigar.hpp"

#include <cmath>
#include <stdexcept>

namespace rg2 {

namespace {

void validate(const CigarParams& p) {
    if (!(p.c > 0.0)) throw std::invalid_argument("cigar: c must be positive");
    if (p.alpha < 0.0) throw std::invalid_argument("cigar: alpha must be nonnegative");
}

double radicand(double v, const CigarParams& p) {
    const double r = 1.0 + 2.0 * p.c * p.alpha * v;
    if (!(r > 0.0)) throw std::domain_error("cigar: nonpositive radicand 1 + 2 c alpha v");
    return r;
}

} // namespace

std::pair<double, double> cigar_rhs(double phi, double v, const CigarParams& p) {
    validate(p);
    const double root = std::sqrt(radicand(v, p));
    // (phi/alpha)(1 - root) = -2 c phi v / (1 + root)
    return {v, -2.0 * p.c * phi * v / (1.0 + root)};
}

double cigar_curvature(double v, const CigarParams& p) {
    validate(p);
    const double root = std::sqrt(radicand(v, p));
    return 2.0 * p.c * v / (1.0 + root);
}

CigarProfile integrate_cigar(const CigarParams& p, double s_max, IntegratorOptions opts) {
    validate(p);
    if (!(s_max > 0.0)) throw std::invalid_argument("integrate_cigar: s_max must be positive");
    if (opts.max_step == 0.0) opts.max_step = 1e-2;

    const VectorField field = [p](double, const std::vector<double>& y, std::vector<double>& dy) {
        const auto [dphi, dv] = cigar_rhs(y[0], y[1], p);
        dy[0] = dphi;
        dy[1] = dv;
    };
    const EventFunction plateau = [](double, const std::vector<double>& y) {
        return y[1] - 1e-10;
    };
    const Trajectory traj =
        integrate_with_event(field, {0.0, 1.0}, 0.0, s_max, opts, plateau, "plateau");
    if (traj.termination.kind == TerminationKind::StepSizeUnderflow)
        throw std::runtime_error("integrate_cigar: step size underflow");

    CigarProfile prof;
    const size_t m = traj.times.size();
    prof.s.reserve(m);
    prof.phi.reserve(m);
    prof.v.reserve(m);
    prof.K.reserve(m);
    prof.f.reserve(m);
    double f_acc = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double s = traj.times[i];
        const double phi = traj.states[i][0];
        const double v = traj.states[i][1];
        if (i > 0)
            f_acc += 0.5 * (s - prof.s.back()) * p.c * (phi + prof.phi.back());
        prof.s.push_back(s);
        prof.phi.push_back(phi);
        prof.v.push_back(v);
        prof.K.push_back(cigar_curvature(v, p));
        prof.f.push_back(f_acc);
    }
    return prof;
}

std::pair<std::vector<double>, std::vector<double>>
ricci_cigar_profile(double c, const std::vector<double>& s_grid) {
    if (!(c > 0.0)) throw std::invalid_argument("ricci_cigar_profile: c must be positive");
    const double m = std::sqrt(0.5 * c);
    std::vector<double> psi(s_grid.size()), kpsi(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i) {
        const double th = std::tanh(m * s_grid[i]);
        psi[i] = std::sqrt(2.0 / c) * th;
        kpsi[i] = c * (1.0 - th * th);
    }
    return {std::move(psi), std::move(kpsi)};
}

double soliton_residual(const CigarProfile& profile, const CigarParams& p) {
    validate(p);
    double worst = 0.0;
    for (size_t i = 0; i < profile.s.size(); ++i) {
        const double s = profile.s[i];
        const double phi = profile.phi[i];
        const double v = profile.v[i];
        const double K = profile.K[i];
        if (s < 1e-3 || !(phi > 1e-6)) continue;
        const double ratio = -K; // phi''/phi
        const double r_ode = -ratio + 0.5 * p.alpha * ratio * ratio - p.c * v;
        const double hess = K + 0.5 * p.alpha * K * K;
        const double r_fpp = p.c * v - hess;           // f'' = c v
        const double r_hess = (v / phi) * (p.c * phi) - hess; // f' = c phi
        worst = std::max({worst, std::abs(r_ode), std::abs(r_fpp), std::abs(r_hess)});
    }
    return worst;
}

std::vector<double> negative_c_reference(double c, const std::vector<double>& s_grid) {
    if (!(c < 0.0)) throw std::invalid_argument("negative_c_reference: c must be negative");
    const double ac = -c;
    const double pole = M_PI / std::sqrt(2.0 * ac);
    std::vector<double> psi(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i) {
        if (s_grid[i] >= pole)
            throw std::domain_error("negative_c_reference: grid reaches the tangent pole");
        psi[i] = std::sqrt(2.0 / ac) * std::tan(std::sqrt(0.5 * ac) * s_grid[i]);
    }
    return psi;
}

} // namespace rg2
