#pragma once

#include "rg2/curvature3d.hpp"
#include "rg2/ode.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rg2 {

enum class MilnorFamily { SU2, SL2R, Sol, Nil, Euclidean, H3, H2xR };

const char* to_string(MilnorFamily f);
MilnorFamily milnor_family_from_string(const std::string& name);

/// Diagonal left-invariant 3-geometry: structure constants [e2,e3] = c1 e1
/// (cyclically) and metric coefficients (A, B, C) > 0 on the Milnor frame.
/// The per-family normalization puts any equal pair of structure constants in
/// slots 2 and 3, so the symmetric ansatz B = C is preserved by the flow:
/// SU2 = (2,2,2), SL2R = (-2,2,2), Sol = (0,1,-1), Nil = (1,0,0),
/// Euclidean = (0,0,0). H3 (A = B = C) and H2xR (A = B, hyperbolic factor)
/// are served by constant-curvature / product curvature formulas rather than
/// structure constants.
struct MilnorGeometry {
    MilnorFamily family = MilnorFamily::Euclidean;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    double A = 1.0, B = 1.0, C = 1.0;
};

MilnorGeometry make_geometry(MilnorFamily family, double A, double B, double C);

enum class AsymptoticsClass {
    FiniteTimeShrinker,
    ImmortalCigar,
    ImmortalPancake,
    Static,
    Indeterminate,
};

const char* to_string(AsymptoticsClass c);

/// Principal Ricci curvatures in the orthonormalized Milnor frame, in frame
/// order (direction 1, 2, 3).
RicciEigenvalues milnor_ricci(const MilnorGeometry& geom);

/// (A', B', C') of the flow dg/dt = -2 Rc - (alpha/2) Rm^2 restricted to the
/// class: X_i' = (-2 a_i - (alpha/2) b_i) X_i with a, b the Ricci and Rm^2
/// eigenvalues of the current metric. alpha = 0 is exactly the Ricci flow.
std::array<double, 3> rg2_rhs_homogeneous(const MilnorGeometry& geom, double alpha);

/// Integrate (A, B, C) with extinction event min(A, B, C) = 1e-8.
Trajectory evolve_homogeneous(const MilnorGeometry& geom, double alpha, double t_end,
                              const IntegratorOptions& opts = {});

/// Classify a finished (A, B, C) trajectory: extinction (or a step-size
/// collapse) means a finite-time shrinker; otherwise directions are compared
/// by their log-derivatives relative to the mean over the final decade of the
/// run (1 relatively shrinking direction -> cigar, 2 -> pancake).
AsymptoticsClass classify_asymptotics(const Trajectory& traj);

struct PhasePlaneScan {
    std::vector<double> a_values;
    std::vector<double> b_values;
    std::vector<AsymptoticsClass> cells; // row-major: [ia * b_values.size() + ib]
    std::vector<std::uint8_t> boundary;  // 1 where a 4-neighbor has a different class

    AsymptoticsClass at(size_t ia, size_t ib) const { return cells[ia * b_values.size() + ib]; }
};

/// Classify every initial condition (A0, B0) with B = C = B0 on the grid.
PhasePlaneScan phase_plane_scan(MilnorFamily family, double alpha,
                                const std::vector<double>& a_values,
                                const std::vector<double>& b_values, double t_horizon,
                                const IntegratorOptions& opts = {});

} // namespace rg2
