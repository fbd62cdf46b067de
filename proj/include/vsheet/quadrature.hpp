// quadrature.hpp
//
// Mean-value integrals over the periodic circle — the normalized integral
// (1/2π)∫₀^{2π} — including principal-value integrals with cotangent-type
// singularities, plus the desingularized kernel machinery used by the
// sheet functionals.
//
// Two rules:
//   * mean: plain trapezoid (1/Q)Σ, spectrally accurate for smooth periodic
//     integrands, exact for trigonometric polynomials of degree < Q/2.
//   * pv_mean: alternate-point trapezoid (2/Q)Σ over the nodes at odd offset
//     from the singular node. For kernels whose singular part is odd about
//     the singularity (cotangent type) this converges spectrally; the
//     singular node itself is never sampled.
//
// The PV rule here is deliberately different from the singularity-subtraction
// rule used by the oracle module, so the two never share failure modes.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "vsheet/fourier.hpp"

namespace vsheet {

/// Uniform periodic quadrature grid. `alternate_point` marks the PV variant
/// whose rule skips the singular node and doubles the remaining odd-offset
/// weights. Q must be even so the odd-offset subset is well defined.
struct PVGrid {
    std::size_t q_count = 0;
    bool alternate_point = false;

    explicit PVGrid(std::size_t q, bool alt = false) : q_count(q), alternate_point(alt) {
        if (q == 0 || q % 2 != 0)
            throw std::invalid_argument("PVGrid: node count must be even and positive");
    }

    std::vector<double> nodes() const { return fourier_grid(q_count); }
};

/// Plain mean-value rule on samples over the full grid: (1/Q) Σ values[q].
double mean(std::span<const double> values);

/// Mean-value rule applied to a sampler over the grid nodes.
template <class Sampler>
double mean(Sampler&& s, const PVGrid& grid) {
    const std::vector<double> x = grid.nodes();
    double acc = 0.0;
    for (double xq : x) acc += s(xq);
    return acc / static_cast<double>(grid.q_count);
}

/// Alternate-point PV rule from full-grid samples: (2/Q) Σ over nodes at odd
/// offset from the singular node. The values at even offsets (including the
/// singular node) are ignored; callers may leave them unset.
double pv_mean(std::span<const double> values, std::size_t singular_index);

/// Alternate-point PV rule with a sampler; the singular point must be the
/// grid node with index `singular_index` (PV alignment is the caller's job).
template <class Sampler>
double pv_mean(Sampler&& s, std::size_t singular_index, const PVGrid& grid) {
    if (singular_index >= grid.q_count)
        throw std::invalid_argument("pv_mean: singular point is not a grid node");
    const std::vector<double> x = grid.nodes();
    double acc = 0.0;
    for (std::size_t off = 1; off < grid.q_count; off += 2)
        acc += s(x[(singular_index + off) % grid.q_count]);
    return 2.0 * acc / static_cast<double>(grid.q_count);
}

/// Squared chord length of the perturbed circle in angular variables:
///   D = ε²(f(x)−f(y))² + 4(1+εf(x))(1+εf(y))sin²((x−y)/2).
/// Returns exactly 0 at x = y. Throws std::domain_error if a radius factor
/// 1+εf becomes nonpositive (the curve has left the admissible neighborhood).
double denominator(double eps, const EvenSeries& f, double x, double y);

/// Same formula from precomputed point values (fast path shared with the
/// functionals so both routes evaluate the identical expression).
double denominator_from_values(double eps, double f_x, double f_y, double x_minus_y);

/// Same formula with the chord factor a = 4sin²((x−y)/2) already in hand;
/// the functionals' inner loops tabulate that factor once per grid offset.
double denominator_from_chord(double eps, double f_x, double f_y, double chord_a);

/// Desingularized remainder of the chord kernel:
///   K_ε(x,y) = (1/ε)(1/D − 1/(4sin²((x−y)/2)))   for y ≠ x,
/// evaluated in exact rational form (valid at ε = 0, where it reduces to
/// −(f(x)+f(y))/(4sin²((x−y)/2))). On the diagonal K_ε has a double pole as
/// soon as f is non-constant; the finite object is the rescaled limit
///   lim_{y→x} 4sin²((x−y)/2)·K_ε = −(2f + ε(f² + f′²)) / (ε²f′² + (1+εf)²),
/// and that limit is what the diagonal call returns. The solve path never
/// samples the diagonal (alternate-point rule), so only off-diagonal values
/// enter the residual; the diagonal value is exposed for completeness and
/// matches the constant-f closed form.
double kernel_correction(double eps, const EvenSeries& f, double x, double y);

/// Off-diagonal fast path from precomputed values (f′ is not needed there).
double kernel_correction_from_values(double eps, double f_x, double f_y, double x_minus_y);

/// Off-diagonal fast path with the chord factor precomputed.
double kernel_correction_from_chord(double eps, double f_x, double f_y, double chord_a);

/// Rescaled diagonal limit of K_ε (see above).
double kernel_correction_diagonal(double eps, double f_x, double fprime_x);

/// The two factors of the chord-kernel decomposition 1/D = 1/(4sin²) + ε·K_ε,
/// packaged as callables over (x, y) for a fixed state.
struct KernelSplit {
    std::function<double(double, double)> leading;     // 1/(4 sin²((x−y)/2))
    std::function<double(double, double)> correction;  // K_ε(x, y)
    double epsilon = 0.0;
};

/// Build the split for a given shape perturbation.
KernelSplit make_kernel_split(double eps, const EvenSeries& f);

}  // namespace vsheet
