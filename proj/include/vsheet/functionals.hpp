// functionals.hpp
//
// The steady-state residual functionals for small vortex sheets near a
// rotating or translating point-vortex configuration.
//
// Geometry and unknowns. The base sheet is the closed curve
//   z(x) = ε R(x) (cos x, sin x),   R = 1 + ε f,
// carrying the per-parameter circulation density γ(x) = 1 + ε g (total
// circulation 2π). f and g are even cosine series without constant mode.
// Co-rotating mode: m copies of the sheet, rotated about the point (d, 0)
// by angles 2πi/m, all with weight +γ, rotating rigidly with angular
// velocity Ω about (d, 0). Traveling mode: the mirror image through (d, 0)
// (point-reflected copy) carries weight −γ and the pair translates with
// velocity (0, W).
//
// With v the induced sheet velocity (principal value of the Biot–Savart
// integral over all sheets, perp convention (a₁,a₂)^⊥ = (a₂,−a₁)), the
// residual pair evaluated here is
//   F₁ = −(1/ε) (v + frame) · N,                N = (∂ₓz)^⊥ (outward),
//   F̃₂ = −(1/ε) (v + frame) · ∂ₓz · γ / |∂ₓz|²,
// with frame = Ω(z − d e₁)^⊥ (co-rotating) or −W e₂ (traveling); F₂ is F̃₂
// with its mean removed. A relative equilibrium is exactly a joint zero:
// F₁ = 0 says the sheet is materially invariant in the moving frame, F₂ = 0
// (plus a constant) says the weight is transported consistently.
//
// The 1/ε is removed analytically: the self-interaction chord kernel is
// split as 1/D = 1/(4sin²((x−y)/2)) + ε·K_ε, the singular part is integrated
// per Fourier mode in closed form (Hilbert transform and half-Laplacian
// identities), and only the smooth remainder K_ε is quadratured. Everything
// is therefore evaluable at ε = 0, where the functionals reduce to an exact
// linear operator used as the solver's base point.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsheet/fourier.hpp"

namespace vsheet {

enum class SheetMode { co_rotating, traveling };

/// Static problem description. `m` is the number of co-rotating copies;
/// traveling mode always involves exactly two sheets (m is kept at 2 for
/// bookkeeping). `d` is the offset of the rotation/reflection center.
struct SheetConfig {
    SheetMode mode = SheetMode::co_rotating;
    int fold_count = 2;          // m
    double center_offset = 2.0;  // d
    std::size_t series_order = 32;      // N, truncation of f and g
    std::size_t quadrature_size = 256;  // Q, shared x/y grid
    double newton_tol = 1e-11;
    int newton_max_iter = 25;

    /// Throws std::invalid_argument when a structural invariant is violated
    /// (d > 1, m >= 2, Q even with Q >= 2N+2, positive tolerances).
    void validate() const;
};

/// Unknown state: the perturbation amplitude ε and the two shape/weight
/// series. The quotient gauge ties the first cosine coefficients together,
/// a₁(g) = −a₁(f); it is re-imposed by enforce_gauge after every update so
/// states constructed from raw coefficient vectors are always admissible
/// representatives.
struct SheetState {
    double epsilon = 0.0;
    EvenSeries f;
    EvenSeries g;

    SheetState() = default;
    SheetState(double eps, EvenSeries f_in, EvenSeries g_in);

    void enforce_gauge();
};

/// Throws std::domain_error if the state leaves the admissible neighborhood:
/// |ε| < 1/2, pointwise radius 1 + εf ≥ 0.1 on the grid, and the safeguard
/// ‖f‖_∞, ‖g‖_∞ ≤ 0.9/|ε| for ε ≠ 0.
void require_admissible(const SheetConfig& cfg, const SheetState& state);

/// Result of the scalar speed closure. total = base + ε·correction, where
/// base is the point-vortex speed (Ω* = (m−1)/(2d²) or W* = 1/(2d)) and
/// correction the finite-ε adjustment per unit ε (zero at ε = 0 by
/// construction: the closure is exact there for any admissible state).
struct SpeedClosure {
    double base = 0.0;
    double correction = 0.0;
    double total = 0.0;
};

/// Point-vortex reference speeds.
double base_rotation_speed(int fold_count, double center_offset);   // (m−1)/(2d²)
double base_translation_speed(double center_offset);                // 1/(2d)

/// Normal residual series (odd) of the co-rotating system at speed Ω.
/// Throws on inadmissible states and on parity violation of the samples.
OddSeries eval_F1(const SheetConfig& cfg, double omega, const SheetState& state);

/// Tangential residual series (even, mean removed) of the co-rotating system.
EvenSeries eval_F2(const SheetConfig& cfg, double omega, const SheetState& state);

/// Traveling-mode analogues at translation speed W.
OddSeries eval_G1(const SheetConfig& cfg, double w_speed, const SheetState& state);
EvenSeries eval_G2(const SheetConfig& cfg, double w_speed, const SheetState& state);

/// Solve for the unique speed with ∫F₁ sin x dx = −∫F₂ cos x dx (the first
/// sine coefficient of F₁ plus the first cosine coefficient of F̃₂ vanishes).
/// Both functionals are affine in the speed, so two evaluations determine the
/// scalar affine equation exactly. Throws std::domain_error when the affine
/// coefficient degenerates (state or d far outside the admissible regime).
SpeedClosure closure_speed(const SheetConfig& cfg, const SheetState& state);

/// Mean-removal projection on grid samples; output mean is 0 to rounding.
SampledFunction remove_mean(const SampledFunction& s);
std::vector<double> remove_mean(std::vector<double> values);

/// One full residual evaluation with the closure folded in: the speed is
/// re-solved, both functional sample sets and their series are produced, and
/// the reduced residual vector (p₁..p_N, q₂..q_N) is assembled. This is the
/// map Newton drives to zero.
struct ClosedResidual {
    SpeedClosure speed;
    std::vector<double> f1_samples;  // F₁ (or G₁) at the grid nodes
    std::vector<double> f2_samples;  // F₂ (or G₂), mean removed
    OddSeries p;                     // sine coefficients of F₁
    EvenSeries q;                    // cosine coefficients of F₂
    double residual_sup = 0.0;       // max over both sample sets
    double residual_l2 = 0.0;        // root mean square over both sample sets
    std::vector<double> reduced;     // (p₁..p_N, q₂..q_N), length 2N−1
};

ClosedResidual closed_residual(const SheetConfig& cfg, const SheetState& state);

/// Reduced coordinates <-> state: r = (a₁..a_N of f, b₂..b_N of g) with
/// b₁ = −a₁ implied by the gauge. Length 2N−1.
std::vector<double> to_reduced(const SheetState& state, std::size_t order);
SheetState from_reduced(std::span<const double> reduced, double epsilon, std::size_t order);

}  // namespace vsheet
