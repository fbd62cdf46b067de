// fourier.cpp — direct spectral transforms and coefficient-space operators.

#include "vsheet/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vsheet {

namespace {

constexpr double kParityTolerance = 1e-10;  // relative energy, tripwire

/// Energy of the even and odd parts of grid samples about x = 0.
/// On the uniform grid the reflection x -> -x maps node q to node (Q-q) mod Q,
/// so parity separates exactly without any interpolation.
struct ParityEnergy {
    double even = 0.0;
    double odd = 0.0;
};

ParityEnergy parity_energy(std::span<const double> v) {
    ParityEnergy e;
    const std::size_t q_count = v.size();
    for (std::size_t q = 0; q < q_count; ++q) {
        const std::size_t mirrored = (q_count - q) % q_count;
        const double even_part = 0.5 * (v[q] + v[mirrored]);
        const double odd_part = 0.5 * (v[q] - v[mirrored]);
        e.even += even_part * even_part;
        e.odd += odd_part * odd_part;
    }
    return e;
}

}  // namespace

std::vector<double> fourier_grid(std::size_t q_count) {
    std::vector<double> x(q_count);
    for (std::size_t q = 0; q < q_count; ++q)
        x[q] = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(q_count);
    return x;
}

double sample(const EvenSeries& u, double x) {
    double s = 0.0;
    for (std::size_t j = 0; j < u.coeff.size(); ++j)
        s += u.coeff[j] * std::cos(static_cast<double>(j + 1) * x);
    return s;
}

double sample(const OddSeries& u, double x) {
    double s = 0.0;
    for (std::size_t j = 0; j < u.coeff.size(); ++j)
        s += u.coeff[j] * std::sin(static_cast<double>(j + 1) * x);
    return s;
}

std::vector<double> synth(const EvenSeries& u, std::size_t q_count) {
    const std::vector<double> x = fourier_grid(q_count);
    std::vector<double> v(q_count, 0.0);
    for (std::size_t j = 0; j < u.coeff.size(); ++j) {
        const double a = u.coeff[j];
        if (a == 0.0) continue;
        const double jj = static_cast<double>(j + 1);
        for (std::size_t q = 0; q < q_count; ++q) v[q] += a * std::cos(jj * x[q]);
    }
    return v;
}

std::vector<double> synth(const OddSeries& u, std::size_t q_count) {
    const std::vector<double> x = fourier_grid(q_count);
    std::vector<double> v(q_count, 0.0);
    for (std::size_t j = 0; j < u.coeff.size(); ++j) {
        const double p = u.coeff[j];
        if (p == 0.0) continue;
        const double jj = static_cast<double>(j + 1);
        for (std::size_t q = 0; q < q_count; ++q) v[q] += p * std::sin(jj * x[q]);
    }
    return v;
}

double odd_parity_defect(std::span<const double> values) {
    const ParityEnergy e = parity_energy(values);
    const double total = e.even + e.odd;
    return total > 0.0 ? e.odd / total : 0.0;
}

double even_parity_defect(std::span<const double> values) {
    const ParityEnergy e = parity_energy(values);
    const double total = e.even + e.odd;
    return total > 0.0 ? e.even / total : 0.0;
}

namespace {

/// The relative tripwire fires only when the offending energy is also above
/// the caller's absolute noise floor: samples representing a residual that
/// has converged to rounding level carry parity noise of order 1e-16 whose
/// *relative* share is meaningless (a 0/0 ratio in the limit).
bool parity_violated(double wrong_energy, double total_energy, std::size_t q_count,
                     double noise_floor) {
    if (total_energy <= 0.0) return false;
    if (wrong_energy / total_energy <= kParityTolerance) return false;
    const double wrong_rms = std::sqrt(wrong_energy / static_cast<double>(q_count));
    return wrong_rms > noise_floor;
}

}  // namespace

EvenSeries analyze_even(std::span<const double> values, std::size_t order, double noise_floor) {
    const ParityEnergy e = parity_energy(values);
    if (parity_violated(e.odd, e.even + e.odd, values.size(), noise_floor))
        throw std::runtime_error(
            "analyze_even: samples violate even parity beyond the 1e-10 tripwire");
    const std::size_t q_count = values.size();
    const std::vector<double> x = fourier_grid(q_count);
    EvenSeries u(order);
    for (std::size_t j = 0; j < order; ++j) {
        const double jj = static_cast<double>(j + 1);
        double acc = 0.0;
        for (std::size_t q = 0; q < q_count; ++q) acc += values[q] * std::cos(jj * x[q]);
        u.coeff[j] = 2.0 * acc / static_cast<double>(q_count);
    }
    return u;
}

OddSeries analyze_odd(std::span<const double> values, std::size_t order, double noise_floor) {
    const ParityEnergy e = parity_energy(values);
    if (parity_violated(e.even, e.even + e.odd, values.size(), noise_floor))
        throw std::runtime_error(
            "analyze_odd: samples violate odd parity beyond the 1e-10 tripwire");
    const std::size_t q_count = values.size();
    const std::vector<double> x = fourier_grid(q_count);
    OddSeries u(order);
    for (std::size_t j = 0; j < order; ++j) {
        const double jj = static_cast<double>(j + 1);
        double acc = 0.0;
        for (std::size_t q = 0; q < q_count; ++q) acc += values[q] * std::sin(jj * x[q]);
        u.coeff[j] = 2.0 * acc / static_cast<double>(q_count);
    }
    return u;
}

OddSeries differentiate(const EvenSeries& u) {
    OddSeries d(u.order());
    for (std::size_t j = 0; j < u.order(); ++j)
        d.coeff[j] = -static_cast<double>(j + 1) * u.coeff[j];
    return d;
}

EvenSeries differentiate(const OddSeries& u) {
    EvenSeries d(u.order());
    for (std::size_t j = 0; j < u.order(); ++j)
        d.coeff[j] = static_cast<double>(j + 1) * u.coeff[j];
    return d;
}

OddSeries hilbert(const EvenSeries& u) { return OddSeries(u.coeff); }

EvenSeries hilbert(const OddSeries& u) {
    EvenSeries h(u.order());
    for (std::size_t j = 0; j < u.order(); ++j) h.coeff[j] = -u.coeff[j];
    return h;
}

EvenSeries half_laplacian(const EvenSeries& u) {
    EvenSeries h(u.order());
    for (std::size_t j = 0; j < u.order(); ++j)
        h.coeff[j] = static_cast<double>(j + 1) * u.coeff[j];
    return h;
}

OddSeries half_laplacian(const OddSeries& u) {
    OddSeries h(u.order());
    for (std::size_t j = 0; j < u.order(); ++j)
        h.coeff[j] = static_cast<double>(j + 1) * u.coeff[j];
    return h;
}

double strip_norm(std::span<const double> coeffs, double sobolev_k, double strip_a) {
    if (sobolev_k < 0.0 || strip_a < 0.0)
        throw std::invalid_argument("strip_norm: k and a must be nonnegative");
    double acc = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double jj = static_cast<double>(j + 1);
        const double weight = (1.0 + std::pow(jj, 2.0 * sobolev_k)) * std::cosh(2.0 * jj * strip_a);
        acc += weight * coeffs[j] * coeffs[j];
    }
    return std::sqrt(acc);
}

double strip_norm(const EvenSeries& u, double sobolev_k, double strip_a) {
    return strip_norm(std::span<const double>(u.coeff), sobolev_k, strip_a);
}

double strip_norm(const OddSeries& u, double sobolev_k, double strip_a) {
    return strip_norm(std::span<const double>(u.coeff), sobolev_k, strip_a);
}

}  // namespace vsheet
