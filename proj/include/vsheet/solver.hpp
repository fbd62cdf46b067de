// solver.hpp
//
// Newton iteration on the reduced closed system and continuation in ε.
//
// The reduced unknown is the coefficient vector (a₁..a_N, b₂..b_N); the
// speed is not an unknown — it is re-solved by the scalar closure inside
// every residual evaluation, so each Newton step moves on the closed system
// directly. Continuation walks a list of ε targets away from the trivial
// branch, seeding each solve from the previous solutions and halving the
// step toward the last good ε when Newton fails.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "vsheet/functionals.hpp"

namespace vsheet {

/// One sampled point of the base-sheet curve, z(x) = (εR cos x, εR sin x).
struct CurvePoint {
    double x = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
};

/// An accepted equilibrium at one ε, with full solve diagnostics.
struct SheetSolution {
    SheetConfig config;
    double epsilon = 0.0;
    SpeedClosure speed;
    EvenSeries f;
    EvenSeries g;
    double residual_sup = 0.0;
    double residual_l2 = 0.0;
    int newton_iters = 0;
    std::vector<double> residual_history;  // sup norm before and after each step
    std::vector<CurvePoint> curve;         // base sheet at the solve grid
};

/// Newton's method on the reduced system at fixed ε, starting from `guess`
/// (whose coefficient content is used; its ε is ignored in favor of the
/// argument). Full steps with a single backtracking halving when the
/// residual fails to decrease. Throws std::runtime_error when the iteration
/// budget is exhausted, when the Jacobian is numerically singular (smallest
/// singular value < 1e−12), or when the line search cannot make progress;
/// std::domain_error when the step leaves the admissible set on both the
/// full and the halved step.
SheetSolution newton_solve(const SheetConfig& cfg, double epsilon, const SheetState& guess);

/// Same, from the zero (trivial-branch) initial guess.
SheetSolution newton_solve(const SheetConfig& cfg, double epsilon);

/// A continuation sweep. `solutions` holds every accepted solution in the
/// order produced (ε strictly monotone away from zero, including any
/// intermediate step-halving ε's); `empirical_eps0` is the largest |ε|
/// reached. A run that could not reach its last target is `truncated` with
/// the reason recorded; everything accepted up to that point is kept.
struct ContinuationRun {
    SheetConfig config;
    std::vector<SheetSolution> solutions;
    double empirical_eps0 = 0.0;
    bool truncated = false;
    std::string failure_reason;
};

/// Solve at each ε target in order. Targets must be strictly monotone away
/// from zero with a single sign (either direction); throws
/// std::invalid_argument otherwise. Seeding: zero state for the first solve,
/// the previous solution for the second, linear extrapolation in ε once two
/// priors exist. On a Newton failure the step from the last good ε is halved,
/// at most 5 times per target; exhaustion truncates the run instead of
/// throwing.
ContinuationRun continue_family(const SheetConfig& cfg, std::span<const double> eps_targets);

/// Spectral health of an accepted solution.
struct SpectralDiagnostics {
    double tail_ratio = 0.0;  // coefficient energy fraction in the top quarter
                              // of frequencies, over both f and g (0 if trivial)
    double decay_rate = 0.0;  // ρ fitted to |a_j| ≈ C·ρ^j over resolved modes
                              // of f (|a_j| > 1e−14); 0 when underdetermined
};

SpectralDiagnostics spectral_diagnostics(const SheetSolution& sol);

}  // namespace vsheet
