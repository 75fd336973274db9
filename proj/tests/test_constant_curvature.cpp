#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rg2/constant_curvature.hpp"
#include "rg2/lambert_w.hpp"

#include <cmath>

using namespace rg2;

namespace {

ConstantCurvatureProblem problem(double K, double alpha = 1.0, int n = 3) {
    return {K, {alpha, n}, 1.0};
}

// Time for the scale factor to fall from 1 to phi under the flow, by
// adaptive Simpson quadrature of dt = dphi / |phi'|. Independent of the
// integrator and of the closed forms.
double collapse_time_quadrature(const ConstantCurvatureProblem& prob, double phi_lo,
                                double phi_hi) {
    const auto integrand = [&](double phi) { return 1.0 / -phi_rhs(phi, prob); };
    std::function<double(double, double, double, double, double, double)> simpson =
        [&](double a, double b, double fa, double fm, double fb, double tol) -> double {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = integrand(lm), frm = integrand(rm);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (std::abs(left + right - whole) < 15.0 * tol) return left + right;
        return simpson(a, m, fa, flm, fm, tol / 2.0) + simpson(m, b, fm, frm, fb, tol / 2.0);
    };
    const double fa = integrand(phi_lo), fb = integrand(phi_hi);
    const double fm = integrand(0.5 * (phi_lo + phi_hi));
    return simpson(phi_lo, phi_hi, fa, fm, fb, 1e-13);
}

} // namespace

TEST_CASE("phi_rhs pins") {
    CHECK(phi_rhs(1.0, problem(0.0)) == 0.0);
    CHECK(phi_rhs(1.0, problem(-2.0)) == 0.0); // K = -2/alpha fixed point
    CHECK(phi_rhs(1.0, problem(1.0)) == -6.0);
    CHECK_THROWS_AS(phi_rhs(0.0, problem(1.0)), std::domain_error);
}

TEST_CASE("closed form specializes at K = 1") {
    const auto prob = problem(1.0);
    for (double t = 0.0; t < 0.11; t += 0.005) {
        const double direct =
            -0.5 - 0.5 * lambert_w(WBranch::MinusOne, -3.0 * std::exp(8.0 * t - 3.0));
        CHECK(phi_closed_form(t, prob) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("closed form specializes at K = -1/2") {
    const auto prob = problem(-0.5);
    for (double t = 0.0; t <= 2.0; t += 0.1) {
        const double direct =
            0.25 + 0.25 * lambert_w(WBranch::Principal, 3.0 * std::exp(8.0 * t + 3.0));
        CHECK(phi_closed_form(t, prob) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("closed form specializes at K = -6") {
    const auto prob = problem(-6.0);
    for (double t = 0.0; t < 0.009; t += 0.0005) {
        const double direct =
            3.0 + 3.0 * lambert_w(WBranch::Principal, -(2.0 / 3.0) * std::exp(8.0 * t - 2.0 / 3.0));
        CHECK(phi_closed_form(t, prob) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("closed form starts at one and satisfies the flow equation") {
    for (double K : {1.0, -0.5, -6.0, 0.3, -3.0}) {
        for (double alpha : {1.0, 0.25}) {
            for (int n : {2, 3, 4}) {
                if (2.0 + alpha * K == 0.0 || K == 0.0) continue;
                const ConstantCurvatureProblem prob{K, {alpha, n}, 1.0};
                CHECK(phi_closed_form(0.0, prob) == doctest::Approx(1.0).epsilon(1e-12));
                // centered difference of the closed form against phi_rhs
                const double t = 0.002, h = 1e-6;
                const double base = phi_closed_form(t, prob);
                const double deriv =
                    (phi_closed_form(t + h, prob) - phi_closed_form(t - h, prob)) / (2.0 * h);
                CHECK(deriv == doctest::Approx(phi_rhs(base, prob)).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("closed form signals a passed extinction") {
    const auto prob = problem(1.0);
    const double T = *extinction_time(prob);
    CHECK_THROWS_AS(phi_closed_form(T + 1e-3, prob), std::domain_error);
}

TEST_CASE("extinction time pins") {
    const auto T = extinction_time(problem(1.0));
    REQUIRE(T.has_value());
    CHECK(*T == doctest::Approx(0.25 + 0.125 * std::log(1.0 / 3.0)).epsilon(1e-15));
    CHECK_FALSE(extinction_time(problem(-0.5)).has_value());
    CHECK_FALSE(extinction_time(problem(0.0)).has_value());
    const auto Th = extinction_time(problem(-6.0));
    REQUIRE(Th.has_value());
    CHECK(*Th == doctest::Approx(-1.0 / 24.0 + 0.125 * std::log(1.5)).epsilon(1e-15));
}

TEST_CASE("extinction time against quadrature of the field") {
    for (double K : {0.5, 1.0, 2.0, -6.0, -3.0}) {
        for (int n : {2, 3}) {
            const ConstantCurvatureProblem prob{K, {1.0, n}, 1.0};
            const auto T = extinction_time(prob);
            if (!T) continue;
            const double quad = collapse_time_quadrature(prob, 1e-12, 1.0);
            CHECK(*T == doctest::Approx(quad).epsilon(1e-9));
        }
    }
}

TEST_CASE("evolution of the collapsing sphere terminates in extinction") {
    const auto prob = problem(1.0);
    const auto traj = evolve_phi(prob, 1.0);
    REQUIRE(traj.termination.kind == TerminationKind::Event);
    CHECK(traj.termination.event_label == "extinction");
    CHECK(traj.termination.event_time == doctest::Approx(*extinction_time(prob)).epsilon(1e-6));
}

TEST_CASE("strongly negative curvature also collapses") {
    const auto prob = problem(-6.0);
    const auto traj = evolve_phi(prob, 1.0);
    REQUIRE(traj.termination.kind == TerminationKind::Event);
    CHECK(traj.termination.event_time == doctest::Approx(*extinction_time(prob)).epsilon(1e-6));
}

TEST_CASE("mildly negative curvature expands forever") {
    const auto traj = evolve_phi(problem(-0.5), 10.0);
    CHECK(traj.termination.kind == TerminationKind::ReachedHorizon);
    for (size_t i = 1; i < traj.states.size(); ++i)
        CHECK(traj.states[i][0] > traj.states[i - 1][0]);
}

TEST_CASE("fixed points stay put") {
    for (double K : {0.0, -2.0}) {
        const auto traj = evolve_phi(problem(K), 1.0);
        CHECK(traj.termination.kind == TerminationKind::ReachedHorizon);
        for (const auto& s : traj.states) CHECK(std::abs(s[0] - 1.0) <= 1e-10);
    }
}

TEST_CASE("implicit residual vanishes along trajectories") {
    for (double K : {1.0, -0.5, -6.0}) {
        const auto prob = problem(K);
        const double horizon = K == -0.5 ? 2.0 : 1.0;
        const auto traj = evolve_phi(prob, horizon);
        for (size_t i = 0; i < traj.times.size(); ++i) {
            const double phi = traj.states[i][0];
            if (!(phi > 1e-6)) continue;
            CHECK(std::abs(phi_implicit_residual(phi, traj.times[i], prob)) <= 1e-6);
        }
    }
}

TEST_CASE("implicit residual pins") {
    CHECK(phi_implicit_residual(1.0, 0.0, problem(1.0)) == 0.0);
    CHECK(phi_implicit_residual(1.0, 0.0, problem(-6.0)) == 0.0);
    CHECK_THROWS_AS(phi_implicit_residual(1.0, 0.0, problem(-2.0)), std::domain_error);
}

TEST_CASE("closed form tracks the integrated flow") {
    for (double K : {1.0, -0.5, -6.0}) {
        const auto prob = problem(K);
        const double t_max = K < 0.0 && 2.0 + K > 0.0 ? 2.0 : 0.95 * *extinction_time(prob);
        for (int i = 1; i <= 20; ++i) {
            const double t = t_max * i / 20.0;
            const auto traj = evolve_phi(prob, t);
            REQUIRE(traj.termination.kind == TerminationKind::ReachedHorizon);
            CHECK(std::abs(traj.states.back()[0] - phi_closed_form(t, prob)) <= 1e-8);
        }
    }
}

TEST_CASE("general initial scale factor on the ode path") {
    const ConstantCurvatureProblem prob{1.0, {1.0, 3}, 2.0};
    const auto traj = evolve_phi(prob, 2.0);
    REQUIRE(traj.termination.kind == TerminationKind::Event);
    CHECK(traj.states.front()[0] == 2.0);
    const double quad = collapse_time_quadrature(prob, 1e-12, 2.0);
    CHECK(traj.termination.event_time == doctest::Approx(quad).epsilon(1e-8));
    // the pinned-constant formulas require phi0 = 1
    CHECK_THROWS_AS(phi_closed_form(0.1, prob), std::invalid_argument);
    CHECK_THROWS_AS(phi_implicit_residual(1.0, 0.1, prob), std::invalid_argument);
    CHECK_THROWS_AS(evolve_phi({1.0, {1.0, 3}, -1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("regime classification") {
    const FlowParams p{1.0, 3};
    CHECK(classify_regime(0.0, p) == Regime::FixedFlat);
    CHECK(classify_regime(1.0, p) == Regime::CollapsingSphere);
    CHECK(classify_regime(-6.0, p) == Regime::CollapsingHyperbolic);
    CHECK(classify_regime(-0.5, p) == Regime::ExpandingHyperbolic);
    CHECK(classify_regime(-2.0, p) == Regime::FixedHyperbolic);
}

TEST_CASE("regime dichotomy around 2 + alpha K = 0") {
    const auto expanding = evolve_phi(problem(-2.0 + 0.1), 10.0);
    CHECK(expanding.termination.kind == TerminationKind::ReachedHorizon);
    CHECK(expanding.states.back()[0] > expanding.states.front()[0]);
    const auto collapsing = evolve_phi(problem(-2.0 - 0.1), 400.0);
    CHECK(collapsing.termination.kind == TerminationKind::Event);
}

TEST_CASE("volume rate") {
    CHECK(volume_rate(0.0, 0.0, 1.0) == 0.0);
    CHECK(volume_rate(-12.0, 48.0, 1.0) == 0.0); // stationary hyperbolic point
    for (double R : {0.5, 3.0, 11.0}) CHECK(volume_rate(R, 4.0, 1.0) < 0.0);
    CHECK_THROWS_AS(volume_rate(1.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("normalization removes pure scaling") {
    for (double K : {1.0, 0.0, -2.0, 0.7, -4.0}) {
        for (double phi : {1.0, 0.5, 2.0}) {
            for (int n : {2, 3, 4}) {
                const ConstantCurvatureProblem prob{K, {1.0, n}, 1.0};
                CHECK(std::abs(normalized_rhs(prob, phi)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("homothety admissibility") {
    CHECK(homothety_admissible({2.0, 2.0, 2.0}, {4.0, 4.0, 4.0}, 1e-12));
    CHECK(homothety_admissible({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1e-12));
    CHECK_FALSE(homothety_admissible({0.5, -0.5, -0.5}, {0.25, 1.25, 1.25}, 1e-8));
}

TEST_CASE("collapse beats the Ricci time for spheres") {
    for (double K : {0.5, 1.0, 2.0})
        for (int n : {2, 3, 4})
            for (double alpha : {0.1, 1.0}) {
                const ConstantCurvatureProblem prob{K, {alpha, n}, 1.0};
                const auto T = extinction_time(prob);
                REQUIRE(T.has_value());
                CHECK(*T > 0.0);
                CHECK(*T < 1.0 / (2.0 * K * (n - 1)));
            }
}
