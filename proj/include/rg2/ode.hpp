#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rg2 {

/// Vector field y' = f(t, y). Writes the derivative into dydt (same size as y).
/// A field may throw FieldDomainError when asked to evaluate outside its
/// domain; the integrator treats that as a failed trial step and retries with
/// a smaller step.
using VectorField =
    std::function<void(double t, const std::vector<double>& y, std::vector<double>& dydt)>;

/// Scalar event function g(t, y); integration stops where g crosses zero.
using EventFunction = std::function<double(double t, const std::vector<double>& y)>;

struct FieldDomainError : std::exception {
    const char* what() const noexcept override { return "vector field domain violation"; }
};

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;     // 0 = no cap beyond the remaining interval
    double initial_step = 0.0; // 0 = choose automatically
};

enum class TerminationKind { ReachedHorizon, Event, StepSizeUnderflow };

struct Termination {
    TerminationKind kind = TerminationKind::ReachedHorizon;
    double event_time = 0.0;
    std::string event_label;
};

/// Accepted-step samples of one integration. times are strictly increasing
/// and states.size() == times.size(); when the run ends in an event the
/// localized event point is the final sample.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    Termination termination;

    const std::vector<double>& final_state() const { return states.back(); }
    double final_time() const { return times.back(); }
};

/// Adaptive Dormand-Prince 5(4) integration from t0 to t_end.
/// Local error per step is held below abs_tol + rel_tol*|y|; terminates with
/// StepSizeUnderflow when the step drops under 1e-14*(t_end - t0).
Trajectory integrate_adaptive(const VectorField& field, const std::vector<double>& y0,
                              double t0, double t_end, const IntegratorOptions& opts);

/// As integrate_adaptive, but stops where the event function changes sign.
/// The crossing is localized by bisection over a single RK5 sub-step of the
/// bracketing accepted step. Requires event(t0, y0) != 0. If the step size
/// collapses while |g| has already fallen below 1e-4*max(1, |g(t0,y0)|) —
/// the signature of a trajectory running into a singular zero of g that
/// double-precision time stepping cannot cross — the stall point is reported
/// as the event itself.
Trajectory integrate_with_event(const VectorField& field, const std::vector<double>& y0,
                                double t0, double t_end, const IntegratorOptions& opts,
                                const EventFunction& event,
                                const std::string& label = "event");

} // namespace rg2
