// oracle.hpp
//
// Independent verification of computed equilibria against the raw
// definition: the sheet-induced velocity is evaluated directly as a
// principal-value sum over the curve, and the steady conditions — zero
// normal velocity in the moving frame, constant tangential weight flux —
// are checked pointwise. Nothing here reuses the solver's desingularized
// kernel algebra or its alternate-point rule: the velocity route is a
// cotangent-subtraction quadrature on the raw kernel, so the two paths
// share no failure modes beyond the Fourier representation itself.

#pragma once

#include <cstddef>

#include "vsheet/fourier.hpp"
#include "vsheet/solver.hpp"

namespace vsheet {

/// A point in the flow plane.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Velocity induced by the full sheet system at one curve node.
struct VelocitySample {
    Vec2 point;
    Vec2 velocity;
};

/// Pointwise equilibrium audit of an accepted solution.
struct EquilibriumReport {
    double normal_residual_sup = 0.0;   // sup |(v + frame)·n| over the nodes
    double tangential_constancy = 0.0;  // sup deviation of t(x) from its mean
    double tangential_mean = 0.0;       // mean of t(x) = (v + frame)·s γ/|∂ₓz|
    double curvature_min = 0.0;         // min over nodes of εκ
    bool curve_is_convex = false;       // curvature_min > 0
};

/// Scaled curvature profile εκ(x) of the sheet curve, from spectral
/// derivatives of R = 1 + εf.
struct CurvatureProfile {
    SampledFunction scaled;  // εκ at the grid nodes
    double min = 0.0;
    bool convex = false;
};

/// Directly evaluated sheet velocity at grid node `node_index` of the
/// solution's own grid (the PV prescription requires the evaluation point to
/// be a node; off-grid points throw std::invalid_argument). Sums the raw
/// Biot–Savart kernel over all sheet copies with singularity-subtraction
/// quadrature on the self term. Throws std::domain_error if the curve is
/// degenerate (|∂ₓz| < 1e−10 somewhere).
VelocitySample br_velocity(const SheetSolution& sol, std::size_t node_index);

/// Full equilibrium audit on a refined grid of `oracle_q` nodes (the shape
/// and weight series are resampled; the speed is taken from the solution).
EquilibriumReport equilibrium_residual(const SheetSolution& sol, std::size_t oracle_q = 1024);

/// Curvature of the sheet curve at the solution's grid resolution.
CurvatureProfile curvature_profile(const SheetSolution& sol);

/// Residual of the mirrored state: ε ↦ −ε with the coefficient signs
/// alternated, (a_j, b_j) ↦ ((−1)^{j+1} a_j, (−1)^{j+1} b_j). That state
/// parameterizes the identical curve from the antipodal origin, so for a
/// genuine equilibrium its closed residual must match the accepted one.
/// Returns the sup norm of that residual.
double mirror_check(const SheetSolution& sol);

}  // namespace vsheet
