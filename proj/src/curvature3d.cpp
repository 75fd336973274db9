#include "rg2/curvature3d.hpp"

#include "rg2/newton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rg2 {

std::array<double, 3> RicciEigenvalues::sorted() const {
    std::array<double, 3> v{lambda, mu, nu};
    std::sort(v.begin(), v.end());
    return v;
}

const char* to_string(FixedPointClass c) {
    switch (c) {
    case FixedPointClass::Flat_R3: return "Flat_R3";
    case FixedPointClass::Hyperbolic_H3: return "Hyperbolic_H3";
    case FixedPointClass::Product_H2xR: return "Product_H2xR";
    case FixedPointClass::NonLocallyHomogeneous: return "NonLocallyHomogeneous";
    case FixedPointClass::Sphere_S3: return "Sphere_S3";
    case FixedPointClass::Product_S2xR: return "Product_S2xR";
    }
    return "?";
}

SectionalTriple sectional_from_ricci(const RicciEigenvalues& r) {
    return {0.5 * (r.mu + r.nu - r.lambda), 0.5 * (r.lambda + r.nu - r.mu),
            0.5 * (r.lambda + r.mu - r.nu)};
}

RicciEigenvalues ricci_from_sectional(const SectionalTriple& s) {
    return {s.k13 + s.k12, s.k23 + s.k12, s.k23 + s.k13};
}

std::array<double, 3> rm2_eigen_from_ricci(const RicciEigenvalues& r) {
    const double R = r.lambda + r.mu + r.nu;
    const double rc2 = r.lambda * r.lambda + r.mu * r.mu + r.nu * r.nu;
    const auto one = [&](double a) { return 2.0 * (-a * a + R * a + rc2 - 0.5 * R * R); };
    return {one(r.lambda), one(r.mu), one(r.nu)};
}

std::array<double, 3> rm2_brute_force(const SectionalTriple& s) {
    double rm[3][3][3][3] = {};
    const auto set_plane = [&](int i, int j, double k) {
        rm[i][j][i][j] = k;
        rm[j][i][j][i] = k;
        rm[i][j][j][i] = -k;
        rm[j][i][i][j] = -k;
    };
    set_plane(1, 2, s.k23);
    set_plane(0, 2, s.k13);
    set_plane(0, 1, s.k12);

    double contracted[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    for (int m = 0; m < 3; ++m)
                        contracted[i][j] += rm[i][k][l][m] * rm[j][k][l][m];

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && std::abs(contracted[i][j]) > 1e-14)
                throw std::logic_error("rm2_brute_force: off-diagonal contraction");
    return {contracted[0][0], contracted[1][1], contracted[2][2]};
}

std::array<double, 3> fixed_point_residual(const RicciEigenvalues& r, double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("fixed_point_residual: alpha must be nonzero");
    const double S = r.lambda + r.mu + r.nu;
    const double rc2 = r.lambda * r.lambda + r.mu * r.mu + r.nu * r.nu;
    const auto one = [&](double a) {
        return -2.0 * a + 0.5 * alpha * S * S - alpha * a * S - alpha * rc2 + alpha * a * a;
    };
    return {one(r.lambda), one(r.mu), one(r.nu)};
}

namespace {

// The four fixed-point families at alpha = 1, sorted ascending; they scale
// as 1/alpha.
constexpr std::array<std::array<double, 3>, 4> kBaseFamilies{{
    {0.0, 0.0, 0.0},
    {-4.0, -4.0, -4.0},
    {-2.0, -2.0, 0.0},
    {-4.0, -2.0, -2.0},
}};

FixedPointClass classify_family(size_t idx, double alpha) {
    switch (idx) {
    case 0: return FixedPointClass::Flat_R3;
    case 1: return alpha > 0.0 ? FixedPointClass::Hyperbolic_H3 : FixedPointClass::Sphere_S3;
    case 2: return alpha > 0.0 ? FixedPointClass::Product_H2xR : FixedPointClass::Product_S2xR;
    default: return FixedPointClass::NonLocallyHomogeneous;
    }
}

} // namespace

std::vector<FixedPoint> solve_fixed_points(double alpha, int seeds_per_axis) {
    if (alpha == 0.0) throw std::invalid_argument("solve_fixed_points: alpha must be nonzero");
    if (seeds_per_axis < 2) throw std::invalid_argument("solve_fixed_points: need >= 2 seeds per axis");

    const double extent = 8.0 / std::abs(alpha);
    std::vector<std::vector<double>> seeds;
    seeds.reserve(static_cast<size_t>(seeds_per_axis) * seeds_per_axis * seeds_per_axis);
    for (int i = 0; i < seeds_per_axis; ++i)
        for (int j = 0; j < seeds_per_axis; ++j)
            for (int k = 0; k < seeds_per_axis; ++k) {
                const auto coord = [&](int q) {
                    return -extent + 2.0 * extent * q / (seeds_per_axis - 1);
                };
                seeds.push_back({coord(i), coord(j), coord(k)});
            }

    const auto residual = [alpha](const std::vector<double>& x) {
        const auto f = fixed_point_residual({x[0], x[1], x[2]}, alpha);
        return std::vector<double>{f[0], f[1], f[2]};
    };
    const auto jacobian = [alpha](const std::vector<double>& x) {
        const double S = x[0] + x[1] + x[2];
        std::vector<double> jac(9);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double d = alpha * S - alpha * x[i] - 2.0 * alpha * x[j];
                if (i == j) d += -2.0 + alpha * x[i];
                jac[i * 3 + j] = d;
            }
        return jac;
    };

    const auto roots = newton_multistart(residual, jacobian, seeds, 1e-12 / std::abs(alpha));

    const double match_tol = 1e-6 / std::abs(alpha);
    std::vector<FixedPoint> out;
    std::vector<bool> seen(kBaseFamilies.size(), false);
    for (const auto& root : roots) {
        std::array<double, 3> v{root[0], root[1], root[2]};
        std::sort(v.begin(), v.end());
        bool matched = false;
        for (size_t f = 0; f < kBaseFamilies.size(); ++f) {
            std::array<double, 3> fam;
            for (int i = 0; i < 3; ++i) fam[i] = kBaseFamilies[f][i] / alpha + 0.0; // kill -0
            std::sort(fam.begin(), fam.end());
            const double dist = std::max({std::abs(v[0] - fam[0]), std::abs(v[1] - fam[1]),
                                          std::abs(v[2] - fam[2])});
            if (dist <= match_tol) {
                if (!seen[f]) {
                    seen[f] = true;
                    out.push_back({{fam[0], fam[1], fam[2]}, classify_family(f, alpha)});
                }
                matched = true;
                break;
            }
        }
        if (!matched)
            throw std::logic_error("solve_fixed_points: converged root matches no known family");
    }
    std::sort(out.begin(), out.end(), [](const FixedPoint& a, const FixedPoint& b) {
        return a.ricci.sorted() < b.ricci.sorted();
    });
    return out;
}

bool kn_local_homogeneity(const RicciEigenvalues& r) {
    const auto v = r.sorted();
    const auto eq = [](double a, double b) { return a == b; };

    // i) all equal, or two equal and the third zero
    if (eq(v[0], v[1]) && eq(v[1], v[2])) return true;
    for (int i = 0; i < 3; ++i) {
        const double a = v[i], b = v[(i + 1) % 3], c = v[(i + 2) % 3];
        if (eq(a, b) && c == 0.0) return true;
    }

    // ii) positive product, or at least two zero
    if (v[0] * v[1] * v[2] > 0.0) return true;
    int zeros = 0;
    for (double x : v) zeros += (x == 0.0);
    if (zeros >= 2) return true;

    // iii) all non-positive, at most one zero, and for some re-numeration
    //      2*lambda < mu + nu and lambda*(mu + nu) <= mu^2 + nu^2
    if (v[2] <= 0.0 && zeros <= 1) {
        const std::array<std::array<int, 3>, 6> perms{
            {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        for (const auto& p : perms) {
            const double l = v[p[0]], m = v[p[1]], n = v[p[2]];
            if (2.0 * l < m + n && l * (m + n) <= m * m + n * n) return true;
        }
    }
    return false;
}

bool check_parabolicity(const SectionalTriple& s, double alpha) {
    return 1.0 + alpha * s.k23 > 0.0 && 1.0 + alpha * s.k13 > 0.0 && 1.0 + alpha * s.k12 > 0.0;
}

} // namespace rg2
