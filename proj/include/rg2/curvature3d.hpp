#pragma once

#include <array>
#include <vector>

namespace rg2 {

/// Coupling constant and dimension of the flow dg/dt = -2 Rc - (alpha/2) Rm^2.
struct FlowParams {
    double alpha = 1.0;
    int n = 3;
};

/// Principal Ricci curvatures at a point of a 3-manifold. Values are kept in
/// the order supplied (a frame may be attached to them); comparisons between
/// triples go through sorted() since diagonalization has no preferred order.
struct RicciEigenvalues {
    double lambda = 0.0;
    double mu = 0.0;
    double nu = 0.0;

    std::array<double, 3> sorted() const;
};

/// Sectional curvatures of the three coordinate 2-planes (k23, k13, k12) in
/// the Ricci eigenframe.
struct SectionalTriple {
    double k23 = 0.0;
    double k13 = 0.0;
    double k12 = 0.0;
};

/// The fixed-point families of the 3D flow. The last two only occur for
/// alpha < 0.
enum class FixedPointClass {
    Flat_R3,
    Hyperbolic_H3,
    Product_H2xR,
    NonLocallyHomogeneous,
    Sphere_S3,
    Product_S2xR,
};

const char* to_string(FixedPointClass c);

/// k23 = (mu+nu-lambda)/2 and cyclic. Linear and invertible.
SectionalTriple sectional_from_ricci(const RicciEigenvalues& r);

/// Exact inverse: lambda = k13 + k12 and cyclic.
RicciEigenvalues ricci_from_sectional(const SectionalTriple& s);

/// Eigenvalues of the Rm^2 endomorphism in the Ricci eigenbasis, from the
/// 3D identity Rm2_i = 2(-a_i^2 + R a_i + |Rc|^2 - R^2/2).
std::array<double, 3> rm2_eigen_from_ricci(const RicciEigenvalues& r);

/// Independent oracle: assemble the full 3D Riemann tensor of a diagonalized
/// curvature operator (R_1212 = k12 etc., all symmetries imposed) and contract
/// Rm2_ij = Rm_iklm Rm_jklm literally in the orthonormal frame. Asserts the
/// off-diagonal entries vanish and returns the diagonal.
std::array<double, 3> rm2_brute_force(const SectionalTriple& s);

/// The three quadratic equations whose zeros are the flow's fixed points.
std::array<double, 3> fixed_point_residual(const RicciEigenvalues& r, double alpha);

struct FixedPoint {
    RicciEigenvalues ricci; // sorted ascending
    FixedPointClass cls;
};

/// Multistart Newton over a seeds_per_axis^3 grid in [-8/|alpha|, 8/|alpha|]^3,
/// deduplicated up to eigenvalue permutation and classified. Exactly four
/// families exist for either sign of alpha.
std::vector<FixedPoint> solve_fixed_points(double alpha, int seeds_per_axis = 17);

/// Kowalski-Nikcevic existence conditions for a locally homogeneous 3-manifold
/// with the given principal Ricci curvatures (checked over all re-numerations).
bool kn_local_homogeneity(const RicciEigenvalues& r);

/// Strict parabolicity condition 1 + alpha*k > 0 for each sectional curvature.
bool check_parabolicity(const SectionalTriple& s, double alpha);

} // namespace rg2
