#include "rg2/newton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rg2 {

namespace {

// Solve A*x = b in place by Gaussian elimination with partial pivoting.
// Returns false when the matrix is numerically singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, std::vector<double>& x) {
    const size_t n = b.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        double best = std::abs(a[perm[col] * n + col]);
        for (size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a[perm[r] * n + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (!(best > 1e-300)) return false;
        std::swap(perm[col], perm[piv]);
        const double d = a[perm[col] * n + col];
        for (size_t r = col + 1; r < n; ++r) {
            const double f = a[perm[r] * n + col] / d;
            if (f == 0.0) continue;
            for (size_t c = col; c < n; ++c) a[perm[r] * n + c] -= f * a[perm[col] * n + c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    x.assign(n, 0.0);
    for (size_t i = n; i-- > 0;) {
        double s = b[perm[i]];
        for (size_t c = i + 1; c < n; ++c) s -= a[perm[i] * n + c] * x[c];
        x[i] = s / a[perm[i] * n + i];
    }
    return true;
}

std::vector<double> fd_jacobian(const ResidualFunction& f, const std::vector<double>& x) {
    const size_t n = x.size();
    std::vector<double> jac(n * n);
    std::vector<double> xp = x, xm = x;
    for (size_t j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        xm[j] = x[j] - h;
        const auto fp = f(xp);
        const auto fm = f(xm);
        for (size_t i = 0; i < n; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * h);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return jac;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

double rel_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d2 = 0.0, scale = 1.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
        scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    }
    return std::sqrt(d2) / scale;
}

} // namespace

std::vector<std::vector<double>> newton_multistart(const ResidualFunction& residual,
                                                   const JacobianFunction& jacobian,
                                                   const std::vector<std::vector<double>>& seeds,
                                                   double tol) {
    if (seeds.empty()) throw std::invalid_argument("newton_multistart: seeds must be nonempty");
    if (!(tol > 0.0)) throw std::invalid_argument("newton_multistart: tol must be positive");

    std::vector<std::vector<double>> roots;
    std::vector<double> step;
    for (const auto& seed : seeds) {
        std::vector<double> x = seed;
        bool converged = false;
        for (int it = 0; it < 80; ++it) {
            const auto fx = residual(x);
            if (inf_norm(fx) <= tol) {
                converged = true;
                break;
            }
            const auto jac = jacobian ? jacobian(x) : fd_jacobian(residual, x);
            if (!solve_dense(jac, fx, step)) break;
            bool finite = true;
            for (size_t i = 0; i < x.size(); ++i) {
                x[i] -= step[i];
                finite = finite && std::isfinite(x[i]);
            }
            if (!finite) break;
        }
        if (!converged) continue;
        bool duplicate = false;
        for (const auto& r : roots)
            if (rel_distance(r, x) <= 1e-6) {
                duplicate = true;
                break;
            }
        if (!duplicate) roots.push_back(std::move(x));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace rg2
