#include "rg2/constant_curvature.hpp"

#include "rg2/lambert_w.hpp"

#include <cmath>
#include <stdexcept>

namespace rg2 {

namespace {

void validate(const ConstantCurvatureProblem& prob) {
    if (!(prob.phi0 > 0.0)) throw std::invalid_argument("constant_curvature: phi0 must be positive");
    if (prob.params.n < 2) throw std::invalid_argument("constant_curvature: n must be >= 2");
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
    case Regime::FixedFlat: return "FixedFlat";
    case Regime::CollapsingSphere: return "CollapsingSphere";
    case Regime::CollapsingHyperbolic: return "CollapsingHyperbolic";
    case Regime::ExpandingHyperbolic: return "ExpandingHyperbolic";
    case Regime::FixedHyperbolic: return "FixedHyperbolic";
    }
    return "?";
}

double phi_rhs(double phi, const ConstantCurvatureProblem& prob) {
    if (!(phi > 0.0)) throw std::domain_error("phi_rhs: phi must be positive");
    const double nm1 = prob.params.n - 1;
    return -2.0 * prob.K * nm1 - (prob.params.alpha / phi) * prob.K * prob.K * nm1;
}

Trajectory evolve_phi(const ConstantCurvatureProblem& prob, double t_end,
                      const IntegratorOptions& opts) {
    validate(prob);
    const VectorField field = [prob](double, const std::vector<double>& y,
                                     std::vector<double>& dy) {
        if (y[0] <= 1e-12) throw FieldDomainError{};
        dy[0] = phi_rhs(y[0], prob);
    };
    const EventFunction extinction = [](double, const std::vector<double>& y) {
        return y[0] - 1e-8;
    };
    return integrate_with_event(field, {prob.phi0}, 0.0, t_end, opts, extinction, "extinction");
}

double phi_implicit_residual(double phi, double t, const ConstantCurvatureProblem& prob) {
    validate(prob);
    if (prob.phi0 != 1.0)
        throw std::invalid_argument("phi_implicit_residual: requires phi0 = 1");
    if (!(phi > 0.0)) throw std::domain_error("phi_implicit_residual: phi must be positive");
    const double aK = prob.params.alpha * prob.K;
    const double num = 2.0 * phi + aK;
    const double den = 2.0 + aK;
    if (num == 0.0 || den == 0.0)
        throw std::domain_error("phi_implicit_residual: logarithm singularity");
    const double nm1 = prob.params.n - 1;
    return phi - (-2.0 * prob.K * nm1 * t + 1.0 + 0.5 * aK * std::log(std::abs(num / den)));
}

double phi_closed_form(double t, const ConstantCurvatureProblem& prob) {
    validate(prob);
    if (prob.phi0 != 1.0) throw std::invalid_argument("phi_closed_form: requires phi0 = 1");
    const double aK = prob.params.alpha * prob.K;
    if (prob.K == 0.0 || 2.0 + aK == 0.0)
        throw std::invalid_argument("phi_closed_form: K must avoid the fixed points 0 and -2/alpha");
    const double nm1 = prob.params.n - 1;
    const double A = -(2.0 + aK) / aK;
    const WBranch branch = A < -1.0 ? WBranch::MinusOne : WBranch::Principal;
    const double arg = A * std::exp(A + 4.0 * nm1 * t / prob.params.alpha);
    const double w = lambert_w(branch, arg);
    return -0.5 * aK * (1.0 + w);
}

std::optional<double> extinction_time(const ConstantCurvatureProblem& prob) {
    validate(prob);
    const double aK = prob.params.alpha * prob.K;
    if (prob.K == 0.0 || 2.0 + aK == 0.0) return std::nullopt;
    const bool collapses = prob.K > 0.0 || (prob.K < 0.0 && 2.0 + aK < 0.0);
    if (!collapses) return std::nullopt;
    const double nm1 = prob.params.n - 1;
    return 1.0 / (2.0 * prob.K * nm1) +
           prob.params.alpha / (4.0 * nm1) * std::log(std::abs(aK / (2.0 + aK)));
}

Regime classify_regime(double K, const FlowParams& params) {
    if (K == 0.0) return Regime::FixedFlat;
    if (K > 0.0) return Regime::CollapsingSphere;
    const double two_plus = 2.0 + params.alpha * K;
    if (two_plus < 0.0) return Regime::CollapsingHyperbolic;
    if (two_plus > 0.0) return Regime::ExpandingHyperbolic;
    return Regime::FixedHyperbolic;
}

double volume_rate(double R, double rm_norm_sq, double alpha) {
    if (rm_norm_sq < 0.0) throw std::invalid_argument("volume_rate: |Rm|^2 must be nonnegative");
    return -R - 0.25 * alpha * rm_norm_sq;
}

double normalized_rhs(const ConstantCurvatureProblem& prob, double phi) {
    validate(prob);
    if (!(phi > 0.0)) throw std::domain_error("normalized_rhs: phi must be positive");
    const double n = prob.params.n;
    const double kappa = prob.K / phi; // curvature of phi * g_K
    const double R = n * (n - 1) * kappa;
    const double rm2 = 2.0 * n * (n - 1) * kappa * kappa;
    return phi_rhs(phi, prob) +
           (2.0 * phi / n) * (R + 0.25 * prob.params.alpha * rm2);
}

bool homothety_admissible(const std::array<double, 3>& a, const std::array<double, 3>& b,
                          double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("homothety_admissible: tol must be positive");
    const auto spread = [](const std::array<double, 3>& v) {
        return std::max({v[0], v[1], v[2]}) - std::min({v[0], v[1], v[2]});
    };
    return spread(a) <= tol && spread(b) <= tol;
}

} // namespace rg2
