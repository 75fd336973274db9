#include "rg2/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rg2 {

namespace {

// Series about the branch point z = -1/e in p = +-sqrt(2(e*z + 1)).
// Coefficients from the standard expansion W = sum mu_k p^k.
double branch_point_series(double p) {
    static const double mu[] = {
        -1.0,
        1.0,
        -1.0 / 3.0,
        11.0 / 72.0,
        -43.0 / 540.0,
        769.0 / 17280.0,
        -221.0 / 8505.0,
        680863.0 / 43545600.0,
        -1963.0 / 204120.0,
        226287557.0 / 37623398400.0,
    };
    double acc = 0.0;
    double pk = 1.0;
    for (double c : mu) {
        acc += c * pk;
        pk *= p;
    }
    return acc;
}

// Halley iteration on f(w) = w*e^w - z, written so that z*e^{-w} is formed
// instead of w*e^w (avoids overflow for large |w|).
double halley(double w, double z) {
    for (int iter = 0; iter < 60; ++iter) {
        const double r = w - z * std::exp(-w); // f / e^w
        const double wp1 = w + 1.0;
        const double denom = wp1 - (w + 2.0) * r / (2.0 * wp1);
        const double dw = r / denom;
        const double wn = w - dw;
        if (!std::isfinite(wn)) break;
        w = wn;
        if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w)))
            break;
    }
    return w;
}

// Newton iteration on g(w) = w + log|w| - log|z|, stable where e^w would
// over/underflow (large z on the principal branch, z near 0- on W_{-1}).
double log_form_newton(double w, double log_abs_z) {
    for (int iter = 0; iter < 80; ++iter) {
        const double g = w + std::log(std::abs(w)) - log_abs_z;
        const double dw = g * w / (w + 1.0);
        const double wn = w - dw;
        if (!std::isfinite(wn)) break;
        w = wn;
        if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w))
            break;
    }
    return w;
}

double principal(double z) {
    if (z == 0.0) return 0.0;
    const double ez1 = std::fma(M_E, z, 1.0); // e*z + 1, accurate near the branch point
    if (ez1 < 0.0) {
        if (ez1 > -1e-12) return -1.0; // roundoff below the branch point
        throw std::domain_error("lambert_w: z < -1/e is outside the principal branch");
    }
    const double p = std::sqrt(2.0 * ez1);
    if (p < 1e-4) return branch_point_series(p);

    if (z > 1e10) {
        // Asymptotic guess L1 - L2 + L2/L1, refined in log form.
        const double l1 = std::log(z);
        const double l2 = std::log(l1);
        return log_form_newton(l1 - l2 + l2 / l1, l1);
    }
    double w0;
    if (z > 1.0) {
        // Guess that stays right of the root, where w e^w - z is positive
        // and convex, so the iteration descends monotonically.
        const double lx = std::log(z);
        const double llx = std::log(lx);
        w0 = lx - llx - 0.5 * std::log1p(-llx / lx);
    } else if (z > -0.25) {
        w0 = 0.567 * z;
    } else {
        w0 = branch_point_series(p);
    }
    return halley(w0, z);
}

double minus_one(double z) {
    if (z >= 0.0)
        throw std::domain_error("lambert_w: branch W_{-1} requires z < 0");
    const double ez1 = std::fma(M_E, z, 1.0);
    if (ez1 < 0.0) {
        if (ez1 > -1e-12) return -1.0;
        throw std::domain_error("lambert_w: z < -1/e is outside the W_{-1} branch");
    }
    const double p = -std::sqrt(2.0 * ez1);
    if (p > -1e-4) return branch_point_series(p);

    if (z > -1e-6) {
        // w ~ log(-z) - log(-log(-z)) near 0-, where e^w underflows.
        const double l1 = std::log(-z);
        const double l2 = std::log(-l1);
        return log_form_newton(l1 - l2 + l2 / l1, l1);
    }
    double w0;
    if (z > -0.25) {
        const double l1 = std::log(-z);
        const double l2 = std::log(-l1);
        w0 = l1 - l2 + l2 / l1;
    } else {
        w0 = branch_point_series(p);
    }
    return halley(w0, z);
}

} // namespace

double lambert_w(WBranch branch, double z) {
    if (!std::isfinite(z))
        throw std::domain_error("lambert_w: argument must be finite");
    return branch == WBranch::Principal ? principal(z) : minus_one(z);
}

} // namespace rg2
