#pragma once

#include "rg2/ode.hpp"

#include <utility>
#include <vector>

namespace rg2 {

/// Parameters of the rotationally symmetric steady gradient soliton
/// phi'' = (phi/alpha)(1 - sqrt(1 + 2 c alpha phi')), f' = c phi.
/// alpha = 0 is the Ricci-flow limit phi'' = -c phi phi'.
struct CigarParams {
    double c = 1.0;
    double alpha = 1.0;
};

/// Arclength profile of the soliton: phi(0) = 0, v = phi' with v(0) = 1,
/// K the Gaussian curvature, f the soliton potential (f(0) = 0, trapezoidal
/// quadrature of f' = c phi on the sample grid).
struct CigarProfile {
    std::vector<double> s;
    std::vector<double> phi;
    std::vector<double> v;
    std::vector<double> K;
    std::vector<double> f;
};

/// Right side (phi', v') of the first-order system. The square root is
/// evaluated in the cancellation-free form v' = -2 c phi v / (1 + sqrt(1 +
/// 2 c alpha v)), regular at alpha = 0.
std::pair<double, double> cigar_rhs(double phi, double v, const CigarParams& p);

/// Gaussian curvature K = (sqrt(1 + 2 c alpha v) - 1)/alpha, same stable form.
double cigar_curvature(double v, const CigarParams& p);

/// Integrate the profile from (phi, v) = (0, 1) up to s_max, stopping early
/// once v < 1e-10 (flat continuation). max_step defaults to 1e-2 so the
/// sample grid is dense enough for the quadrature of f.
CigarProfile integrate_cigar(const CigarParams& p, double s_max,
                             IntegratorOptions opts = {});

/// Closed-form Ricci-flow cigar psi = sqrt(2/c) tanh(sqrt(c/2) s) and its
/// curvature K_psi = c (1 - tanh^2) on the given grid.
std::pair<std::vector<double>, std::vector<double>>
ricci_cigar_profile(double c, const std::vector<double>& s_grid);

/// Maximum absolute residual of the soliton equations over the profile
/// samples with s >= 1e-3 and phi > 1e-6: the second-order form
/// -phi''/phi + (alpha/2)(phi''/phi)^2 - c phi' with phi'' = -K phi read off
/// the stored curvature, and the two Hessian components f'' = K + (alpha/2)K^2
/// (with f'' = c v) and (phi'/phi) f' = K + (alpha/2)K^2 (with f' = c phi).
double soliton_residual(const CigarProfile& profile, const CigarParams& p);

/// Negative-curvature reference curve psi = sqrt(2/|c|) tan(sqrt(|c|/2) s) for
/// c < 0; the grid must stay below the pole at pi/sqrt(2|c|).
std::vector<double> negative_c_reference(double c, const std::vector<double>& s_grid);

} // namespace rg2
