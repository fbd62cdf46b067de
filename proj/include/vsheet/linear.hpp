// linear.hpp
//
// The exact linearization of the sheet system at the trivial state ε = 0,
// and the dense numerical Jacobian of the reduced nonlinear residual.
//
// At ε = 0 the closed residual acts diagonally per frequency: the coefficient
// pair (a_j, b_j) of the shape/weight perturbation is mapped to the residual
// pair (p_j, q_j) by a fixed 2×2 block. The block determinant (j−1)/2
// vanishes only at j = 1 — the kernel direction absorbed by the quotient
// gauge b₁ = −a₁ and the speed closure — so the reduced linearization is
// invertible and Newton's method is well posed near the trivial branch.

#pragma once

#include <Eigen/Dense>

#include "vsheet/fourier.hpp"
#include "vsheet/functionals.hpp"

namespace vsheet {

/// One frequency block of the base linearization, acting on (a_j, b_j):
///   M_j = [ −j/2    1/2 ]
///         [ (2−j)/2 −1/2 ],   det M_j = (j−1)/2.
struct FreqBlock {
    int frequency = 0;
    Eigen::Matrix2d matrix = Eigen::Matrix2d::Zero();
    double determinant = 0.0;
};

/// The block at frequency j >= 1.
FreqBlock block(int frequency);

/// Exact inverse of the block; throws std::invalid_argument at j = 1, where
/// the block is singular (resolved by gauge + closure, not by inversion).
Eigen::Matrix2d block_inverse(int frequency);

/// Residual pair produced by the base linearization.
struct BasePair {
    OddSeries normal;    // p = (1/2) h₁′ + (1/2) H h₂
    EvenSeries tangent;  // q = h₁ − (1/2) Λ h₁ − (1/2) h₂
};

/// Apply the base linearization to a perturbation pair (h₁, h₂) using the
/// spectral operators directly. Agrees with per-mode multiplication by M_j.
BasePair apply_base_linearization(const EvenSeries& shape, const EvenSeries& weight);

/// Solution pair of the base linear system.
struct BaseSolution {
    EvenSeries shape;   // h₁
    EvenSeries weight;  // h₂ (gauge-tied first coefficient)
};

/// Solve the base system M_j (a_j, b_j) = (p_j, q_j) for all frequencies.
/// The j = 1 data must satisfy the compatibility relation p₁ + q₁ = 0 (which
/// closed residuals satisfy by construction); the representative returned on
/// the gauge line is (a₁, b₁) = (−p₁, +p₁). Throws std::invalid_argument if
/// |p₁ + q₁| > 1e−10 · max(1, |p₁|, |q₁|).
BaseSolution solve_base_linearization(const OddSeries& p, const EvenSeries& q);

/// Exact reduced-coordinate Jacobian of the closed residual at the trivial
/// state: rows (p₁..p_N, q₂..q_N), columns (a₁..a_N, b₂..b_N). Block diagonal
/// with the M_j entries; the (p₁, a₁) entry is −1 because the gauge makes
/// b₁ = −a₁ move with a₁.
Eigen::MatrixXd base_reduced_jacobian(std::size_t order);

/// Dense Jacobian of the reduced closed-residual map at `state`, by central
/// differences of step `step` in each reduced coordinate. Columns are
/// evaluated concurrently (the residual evaluation is pure). If a shifted
/// evaluation throws (state pushed outside the admissible set), the column
/// is retried once with step/10 before the failure is propagated.
Eigen::MatrixXd numerical_jacobian(const SheetConfig& cfg, const SheetState& state,
                                   double step = 1e-6);

}  // namespace vsheet
