// quadrature.cpp — periodic mean-value rules and the desingularized kernel.

#include "vsheet/quadrature.hpp"

#include <cmath>

namespace vsheet {

double mean(std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return values.empty() ? 0.0 : acc / static_cast<double>(values.size());
}

double pv_mean(std::span<const double> values, std::size_t singular_index) {
    const std::size_t q_count = values.size();
    if (q_count == 0 || q_count % 2 != 0)
        throw std::invalid_argument("pv_mean: sample count must be even and positive");
    if (singular_index >= q_count)
        throw std::invalid_argument("pv_mean: singular point is not a grid node");
    double acc = 0.0;
    for (std::size_t off = 1; off < q_count; off += 2)
        acc += values[(singular_index + off) % q_count];
    return 2.0 * acc / static_cast<double>(q_count);
}

double denominator_from_chord(double eps, double f_x, double f_y, double chord_a) {
    const double radius_x = 1.0 + eps * f_x;
    const double radius_y = 1.0 + eps * f_y;
    if (radius_x <= 0.0 || radius_y <= 0.0)
        throw std::domain_error("denominator: radius 1+eps*f is nonpositive");
    const double df = f_x - f_y;
    return eps * eps * df * df + radius_x * radius_y * chord_a;
}

double denominator_from_values(double eps, double f_x, double f_y, double x_minus_y) {
    const double half_sin = std::sin(0.5 * x_minus_y);
    return denominator_from_chord(eps, f_x, f_y, 4.0 * half_sin * half_sin);
}

double denominator(double eps, const EvenSeries& f, double x, double y) {
    return denominator_from_values(eps, sample(f, x), sample(f, y), x - y);
}

double kernel_correction_from_chord(double eps, double f_x, double f_y, double chord_a) {
    // Exact rational form of (1/eps)(1/D - 1/A) with A = 4 sin^2((x-y)/2):
    //   D = A + eps*Btilde,
    //   Btilde = eps*(f(x)-f(y))^2 + A*(f(x) + f(y) + eps f(x) f(y)),
    // so the quotient -(Btilde)/(A*D) carries no 1/eps and is valid at eps = 0.
    const double df = f_x - f_y;
    const double btilde = eps * df * df + chord_a * (f_x + f_y + eps * f_x * f_y);
    const double d = denominator_from_chord(eps, f_x, f_y, chord_a);
    return -btilde / (chord_a * d);
}

double kernel_correction_from_values(double eps, double f_x, double f_y, double x_minus_y) {
    const double half_sin = std::sin(0.5 * x_minus_y);
    return kernel_correction_from_chord(eps, f_x, f_y, 4.0 * half_sin * half_sin);
}

double kernel_correction_diagonal(double eps, double f_x, double fprime_x) {
    const double radius = 1.0 + eps * f_x;
    if (radius <= 0.0)
        throw std::domain_error("kernel_correction: radius 1+eps*f is nonpositive");
    const double numer = 2.0 * f_x + eps * (f_x * f_x + fprime_x * fprime_x);
    const double denom = eps * eps * fprime_x * fprime_x + radius * radius;
    return -numer / denom;
}

double kernel_correction(double eps, const EvenSeries& f, double x, double y) {
    // Treat (x, y) as diagonal when the chord angle vanishes to rounding.
    if (std::abs(std::sin(0.5 * (x - y))) < 1e-15) {
        const OddSeries fp = differentiate(f);
        return kernel_correction_diagonal(eps, sample(f, x), sample(fp, x));
    }
    return kernel_correction_from_values(eps, sample(f, x), sample(f, y), x - y);
}

KernelSplit make_kernel_split(double eps, const EvenSeries& f) {
    KernelSplit split;
    split.epsilon = eps;
    split.leading = [](double x, double y) {
        const double half_sin = std::sin(0.5 * (x - y));
        return 1.0 / (4.0 * half_sin * half_sin);
    };
    split.correction = [eps, f](double x, double y) { return kernel_correction(eps, f, x, y); };
    return split;
}

}  // namespace vsheet
