// fourier.hpp
//
// Truncated cosine/sine series on the 2π-periodic circle and the exact
// spectral operators the solver is built from: synthesis, analysis on a
// uniform grid, differentiation, the circle Hilbert transform, the square
// root of the (negative) Laplacian, and an analytic-strip diagnostic norm.
//
// Series never store a constant mode: the mean is either identically zero
// by symmetry (odd series) or tracked explicitly by the caller (the
// functionals apply mean-removal as a separate projection step).
//
// All operations are pure; values are immutable after construction and safe
// to share across threads.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vsheet {

/// Even truncated series u(x) = sum_{j>=1} a_j cos(jx).
/// coeff[0] holds a_1. No constant term by design.
struct EvenSeries {
    std::vector<double> coeff;

    EvenSeries() = default;
    explicit EvenSeries(std::size_t order) : coeff(order, 0.0) {}
    explicit EvenSeries(std::vector<double> c) : coeff(std::move(c)) {}

    std::size_t order() const { return coeff.size(); }
};

/// Odd truncated series u(x) = sum_{j>=1} p_j sin(jx). coeff[0] holds p_1.
struct OddSeries {
    std::vector<double> coeff;

    OddSeries() = default;
    explicit OddSeries(std::size_t order) : coeff(order, 0.0) {}
    explicit OddSeries(std::vector<double> c) : coeff(std::move(c)) {}

    std::size_t order() const { return coeff.size(); }
};

/// Values of a 2π-periodic function on the uniform grid x_q = 2πq/Q.
struct SampledFunction {
    std::vector<double> values;

    SampledFunction() = default;
    explicit SampledFunction(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
};

/// Uniform grid nodes x_q = 2πq/Q, q = 0..Q-1.
std::vector<double> fourier_grid(std::size_t q_count);

/// Point evaluation of a series at arbitrary x.
double sample(const EvenSeries& u, double x);
double sample(const OddSeries& u, double x);

/// Evaluate a series at every node of the uniform Q-grid. Direct O(N·Q)
/// summation; no FFT by design (target sizes N <= 128, Q <= 4096).
std::vector<double> synth(const EvenSeries& u, std::size_t q_count);
std::vector<double> synth(const OddSeries& u, std::size_t q_count);

/// Cosine analysis a_j = (2/Q) sum_q values[q] cos(j x_q), j = 1..order.
/// The sample mean is discarded. Throws std::runtime_error if the samples
/// carry odd-parity energy above 1e-10 relative (symmetry tripwire: every
/// quantity analyzed as an even series must be even about x = 0).
/// `noise_floor` is an absolute RMS below which wrong-parity content is
/// treated as rounding noise and the tripwire is skipped: the relative
/// ratio degenerates to 0/0 for samples that have converged to zero, so
/// callers that know the intrinsic scale of their samples (the functionals
/// assemble O(1) terms) pass a floor; 0 keeps the check unconditional.
EvenSeries analyze_even(std::span<const double> values, std::size_t order,
                        double noise_floor = 0.0);

/// Sine analysis p_j = (2/Q) sum_q values[q] sin(j x_q); even-parity tripwire.
OddSeries analyze_odd(std::span<const double> values, std::size_t order,
                      double noise_floor = 0.0);

/// Relative parity defect of grid samples: energy of the component with the
/// wrong symmetry about x = 0 divided by total energy (0 when all samples
/// vanish). `odd_defect` measures the failure of evenness and vice versa.
double odd_parity_defect(std::span<const double> values);
double even_parity_defect(std::span<const double> values);

/// d/dx sum a_j cos(jx) = sum (-j a_j) sin(jx).
OddSeries differentiate(const EvenSeries& u);
/// d/dx sum p_j sin(jx) = sum (j p_j) cos(jx).
EvenSeries differentiate(const OddSeries& u);

/// Circle Hilbert transform: H(cos jx) = sin jx (and H(sin jx) = -cos jx).
OddSeries hilbert(const EvenSeries& u);
EvenSeries hilbert(const OddSeries& u);

/// Square root of the negative Laplacian: a_j -> j a_j.
EvenSeries half_laplacian(const EvenSeries& u);
OddSeries half_laplacian(const OddSeries& u);

/// Diagnostic norm ( sum_j (1 + j^{2k}) cosh(2ja) |c_j|^2 )^{1/2}: a discrete
/// surrogate for the Sobolev-k norm of the extension to the strip |Im| <= a.
/// cosh(2ja) equals |cos(j(x+ia))|^2 averaged over the two strip edges.
/// Report-only; never used inside the solve loop.
double strip_norm(std::span<const double> coeffs, double sobolev_k, double strip_a);
double strip_norm(const EvenSeries& u, double sobolev_k, double strip_a);
double strip_norm(const OddSeries& u, double sobolev_k, double strip_a);

}  // namespace vsheet
