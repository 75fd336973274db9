#pragma once

#include "rg2/curvature3d.hpp"
#include "rg2/ode.hpp"

#include <optional>

namespace rg2 {

/// Scale-factor flow g(t) = phi(t) * g_K for a fixed constant-curvature
/// reference metric g_K. phi0 = 1 is required by the implicit and closed-form
/// paths (their integration constant is pinned there); the ODE path accepts
/// any phi0 > 0.
struct ConstantCurvatureProblem {
    double K = 1.0;
    FlowParams params;
    double phi0 = 1.0;
};

/// Behavior classes of the scale-factor flow, split on sign(K) and
/// sign(2 + alpha*K).
enum class Regime {
    FixedFlat,
    CollapsingSphere,
    CollapsingHyperbolic,
    ExpandingHyperbolic,
    FixedHyperbolic,
};

const char* to_string(Regime r);

/// phi' = -2K(n-1) - (alpha/phi) K^2 (n-1). Domain error at phi <= 0.
double phi_rhs(double phi, const ConstantCurvatureProblem& prob);

/// Integrate the scale factor with extinction event phi = 1e-8; a collapse
/// terminates with Event("extinction").
Trajectory evolve_phi(const ConstantCurvatureProblem& prob, double t_end,
                      const IntegratorOptions& opts = {});

/// Residual of the implicit solution
/// phi = -2K(n-1) t + 1 + (alpha K / 2) ln|(2 phi + alpha K)/(2 + alpha K)|.
double phi_implicit_residual(double phi, double t, const ConstantCurvatureProblem& prob);

/// Closed form phi(t) = -(alpha K/2) (1 + W_b(A e^{A + 4(n-1)t/alpha})) with
/// A = -(2 + alpha K)/(alpha K); branch W_{-1} when A < -1, W_0 otherwise.
/// Throws std::domain_error once the W argument leaves the branch domain
/// (the extinction time has been passed).
double phi_closed_form(double t, const ConstantCurvatureProblem& prob);

/// Extinction time T = 1/(2K(n-1)) + (alpha/(4(n-1))) ln|alpha K/(2+alpha K)|
/// when the collapse happens (K > 0, or K < 0 with 2 + alpha K < 0); empty
/// otherwise.
std::optional<double> extinction_time(const ConstantCurvatureProblem& prob);

Regime classify_regime(double K, const FlowParams& params);

/// Volume-element rate -R - (alpha/4)|Rm|^2.
double volume_rate(double R, double rm_norm_sq, double alpha);

/// Scale-factor form of the volume-normalized flow; identically zero on
/// constant-curvature data (the normalization removes pure scaling).
double normalized_rhs(const ConstantCurvatureProblem& prob, double phi);

/// True when both eigenvalue triples (of Rc and of Rm^2) have max spread
/// <= tol: the admissibility condition for a non-constant pure-scaling
/// solution.
bool homothety_admissible(const std::array<double, 3>& a, const std::array<double, 3>& b,
                          double tol);

} // namespace rg2
