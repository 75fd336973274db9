#include "rg2/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rg2 {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// 5th-order weights minus 4th-order weights (error estimator).
constexpr double e1 = b1 - 5179.0 / 57600.0, e3 = b3 - 7571.0 / 16695.0,
                 e4 = b4 - 393.0 / 640.0, e5 = b5 + 92097.0 / 339200.0,
                 e6 = b6 - 187.0 / 2100.0, e7 = -1.0 / 40.0;

struct Stepper {
    const VectorField& field;
    size_t n;
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, yerr;

    Stepper(const VectorField& f, size_t dim)
        : field(f), n(dim), k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim),
          ytmp(dim), yerr(dim) {}

    // One trial step from (t, y, k1 = f(t, y)) of size h into y_new.
    // Returns false when a stage evaluation left the field's domain.
    bool try_step(double t, const std::vector<double>& y, double h, std::vector<double>& y_new) {
        try {
            for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
            field(t + c2 * h, ytmp, k2);
            for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            field(t + c3 * h, ytmp, k3);
            for (size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            field(t + c4 * h, ytmp, k4);
            for (size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            field(t + c5 * h, ytmp, k5);
            for (size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] +
                          h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            field(t + h, ytmp, k6);
            for (size_t i = 0; i < n; ++i)
                y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            field(t + h, y_new, k7); // FSAL stage, also the error stage
            for (size_t i = 0; i < n; ++i)
                yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
        } catch (const FieldDomainError&) {
            return false;
        }
        for (size_t i = 0; i < n; ++i)
            if (!std::isfinite(y_new[i])) return false;
        return true;
    }

    double error_norm(const std::vector<double>& y, const std::vector<double>& y_new,
                      const IntegratorOptions& o) const {
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double sc = o.abs_tol + o.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double q = yerr[i] / sc;
            acc += q * q;
        }
        return std::sqrt(acc / static_cast<double>(n));
    }
};

double initial_step_guess(const VectorField& field, const std::vector<double>& y0, double t0,
                          double span) {
    std::vector<double> f0(y0.size());
    field(t0, y0, f0);
    double ynorm = 0.0, fnorm = 0.0;
    for (size_t i = 0; i < y0.size(); ++i) {
        ynorm = std::max(ynorm, std::abs(y0[i]));
        fnorm = std::max(fnorm, std::abs(f0[i]));
    }
    double h = (fnorm > 1e-300) ? 0.01 * std::max(ynorm, 1e-3) / fnorm : 1e-3 * span;
    h = std::max(h, 1e-10 * span);
    return std::min(h, 1e-2 * span);
}

void validate(const IntegratorOptions& o) {
    if (!(o.rel_tol > 0.0) || o.rel_tol > 1e-3 || !(o.abs_tol > 0.0) || o.abs_tol > 1e-3)
        throw std::invalid_argument("IntegratorOptions: tolerances must lie in (0, 1e-3]");
    if (o.max_step < 0.0 || o.initial_step < 0.0)
        throw std::invalid_argument("IntegratorOptions: steps must be nonnegative");
}

struct Core {
    Stepper st;
    IntegratorOptions opts;
    double t_end, h_min;
    double err_prev = 1.0;

    Core(const VectorField& f, size_t dim, const IntegratorOptions& o, double t0, double te)
        : st(f, dim), opts(o), t_end(te), h_min(1e-14 * (te - t0)) {}

    // Advance one accepted step; h is updated in place. Returns false on
    // step-size underflow.
    bool advance(double& t, std::vector<double>& y, double& h, std::vector<double>& y_new) {
        while (true) {
            h = std::min(h, t_end - t);
            if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
            const bool ok = st.try_step(t, y, h, y_new);
            double err = ok ? st.error_norm(y, y_new, opts) : 2.0;
            if (ok && err <= 1.0) {
                t += h;
                y.swap(y_new);
                st.k1.swap(st.k7); // FSAL
                // PI controller (Gustafsson): modest growth, smooth response.
                err = std::max(err, 1e-10);
                double fac = 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
                fac = std::clamp(fac, 0.2, 6.0);
                err_prev = err;
                h *= fac;
                return true;
            }
            const double fac = ok ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.3;
            h *= fac;
            if (h < h_min) return false;
        }
    }
};

} // namespace

Trajectory integrate_adaptive(const VectorField& field, const std::vector<double>& y0, double t0,
                              double t_end, const IntegratorOptions& opts) {
    validate(opts);
    if (!(t_end > t0)) throw std::invalid_argument("integrate_adaptive: t_end must exceed t0");

    Core core(field, y0.size(), opts, t0, t_end);
    Trajectory traj;
    double t = t0;
    std::vector<double> y = y0, y_new(y0.size());
    traj.times.push_back(t);
    traj.states.push_back(y);
    field(t, y, core.st.k1);

    double h = opts.initial_step > 0.0 ? opts.initial_step
                                       : initial_step_guess(field, y0, t0, t_end - t0);
    while (t < t_end) {
        if (!core.advance(t, y, h, y_new)) {
            traj.termination = {TerminationKind::StepSizeUnderflow, 0.0, {}};
            return traj;
        }
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    traj.termination = {TerminationKind::ReachedHorizon, 0.0, {}};
    return traj;
}

Trajectory integrate_with_event(const VectorField& field, const std::vector<double>& y0, double t0,
                                double t_end, const IntegratorOptions& opts,
                                const EventFunction& event, const std::string& label) {
    validate(opts);
    if (!(t_end > t0)) throw std::invalid_argument("integrate_with_event: t_end must exceed t0");

    Core core(field, y0.size(), opts, t0, t_end);
    Trajectory traj;
    double t = t0;
    std::vector<double> y = y0, y_new(y0.size());
    traj.times.push_back(t);
    traj.states.push_back(y);
    field(t, y, core.st.k1);

    const double g0 = event(t0, y0);
    if (g0 == 0.0)
        throw std::invalid_argument("integrate_with_event: event already zero at t0");
    double g_prev = g0;

    double h = opts.initial_step > 0.0 ? opts.initial_step
                                       : initial_step_guess(field, y0, t0, t_end - t0);
    std::vector<double> y_left = y, k_left = core.st.k1, y_mid(y0.size());

    while (t < t_end) {
        const double t_left = t;
        y_left = y;
        k_left = core.st.k1;
        if (!core.advance(t, y, h, y_new)) {
            // Stall adjacent to a singular zero of g: report as the event.
            const double g_here = event(t, y);
            if (std::abs(g_here) <= 1e-4 * std::max(1.0, std::abs(g0))) {
                traj.termination = {TerminationKind::Event, t, label};
            } else {
                traj.termination = {TerminationKind::StepSizeUnderflow, 0.0, {}};
            }
            return traj;
        }
        double g_new = event(t, y);
        if (g_new == 0.0 || g_prev * g_new < 0.0) {
            // Bisect in tau over a single RK5 sub-step from the left endpoint;
            // keep the candidate with the smallest |g| seen.
            double lo = t_left, hi = t, g_lo = g_prev;
            double t_star = t, g_star = std::abs(g_new);
            std::vector<double> y_star = y;
            if (g_new != 0.0) {
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) break;
                    core.st.k1 = k_left;
                    if (!core.st.try_step(t_left, y_left, mid - t_left, y_mid)) {
                        hi = mid; // stage left the domain; the crossing is earlier
                        continue;
                    }
                    const double g_mid = event(mid, y_mid);
                    if (std::abs(g_mid) < g_star) {
                        g_star = std::abs(g_mid);
                        t_star = mid;
                        y_star = y_mid;
                    }
                    if (g_mid == 0.0 || std::abs(g_mid) <= 1e-13 * std::max(1.0, std::abs(g0)))
                        break;
                    if (g_lo * g_mid < 0.0) {
                        hi = mid;
                    } else {
                        lo = mid;
                        g_lo = g_mid;
                    }
                }
            }
            if (t_star > traj.times.back()) {
                traj.times.push_back(t_star);
                traj.states.push_back(y_star);
            }
            traj.termination = {TerminationKind::Event, t_star, label};
            return traj;
        }
        g_prev = g_new;
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    traj.termination = {TerminationKind::ReachedHorizon, 0.0, {}};
    return traj;
}

} // namespace rg2
