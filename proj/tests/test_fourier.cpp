// test_fourier.cpp
//
// Unit tests for the truncated-series spectral kernel: synthesis/analysis
// round trips, exact operator identities on single modes, parity tripwires,
// and the analytic-strip diagnostic norm.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vsheet/fourier.hpp"

using namespace vsheet;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("fourier_grid produces uniform nodes starting at zero") {
    const auto x = fourier_grid(8);
    REQUIRE(x.size() == 8);
    CHECK(x[0] == doctest::Approx(0.0));
    CHECK(x[1] == doctest::Approx(2.0 * kPi / 8.0));
    CHECK(x[7] == doctest::Approx(7.0 * 2.0 * kPi / 8.0));
}

TEST_CASE("synthesis/analysis round trip on random coefficients") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    const std::size_t order = 16;
    const std::size_t q = 64;

    EvenSeries even(order);
    OddSeries odd(order);
    for (std::size_t j = 0; j < order; ++j) {
        even.coeff[j] = unif(rng);
        odd.coeff[j] = unif(rng);
    }

    const EvenSeries even_back = analyze_even(synth(even, q), order);
    const OddSeries odd_back = analyze_odd(synth(odd, q), order);

    CHECK(max_abs_diff(even.coeff, even_back.coeff) <= 1e-12);
    CHECK(max_abs_diff(odd.coeff, odd_back.coeff) <= 1e-12);
}

TEST_CASE("analysis picks out single modes exactly") {
    const std::size_t q = 64;
    const auto x = fourier_grid(q);

    SUBCASE("cos 3x") {
        std::vector<double> v(q);
        for (std::size_t i = 0; i < q; ++i) v[i] = std::cos(3.0 * x[i]);
        const EvenSeries a = analyze_even(v, 6);
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(a.coeff[j] - (j == 2 ? 1.0 : 0.0)) <= 1e-14);
    }
    SUBCASE("sin 2x") {
        std::vector<double> v(q);
        for (std::size_t i = 0; i < q; ++i) v[i] = std::sin(2.0 * x[i]);
        const OddSeries p = analyze_odd(v, 4);
        CHECK(std::abs(p.coeff[0]) <= 1e-15);
        CHECK(p.coeff[1] == doctest::Approx(1.0));
        CHECK(std::abs(p.coeff[2]) <= 1e-15);
    }
    SUBCASE("cos x + cos 4x / 4") {
        std::vector<double> v(q);
        for (std::size_t i = 0; i < q; ++i) v[i] = std::cos(x[i]) + 0.25 * std::cos(4.0 * x[i]);
        const EvenSeries a = analyze_even(v, 4);
        CHECK(a.coeff[0] == doctest::Approx(1.0));
        CHECK(std::abs(a.coeff[1]) <= 1e-15);
        CHECK(std::abs(a.coeff[2]) <= 1e-15);
        CHECK(a.coeff[3] == doctest::Approx(0.25));
    }
}

TEST_CASE("analysis discards the sample mean") {
    const std::size_t q = 32;
    const auto x = fourier_grid(q);
    std::vector<double> v(q);
    for (std::size_t i = 0; i < q; ++i) v[i] = 7.5 + std::cos(2.0 * x[i]);
    const EvenSeries a = analyze_even(v, 4);
    CHECK(a.coeff[1] == doctest::Approx(1.0));
    CHECK(std::abs(a.coeff[0]) <= 1e-14);
}

TEST_CASE("parity tripwire fires on wrong-symmetry samples") {
    const std::size_t q = 32;
    const auto x = fourier_grid(q);
    std::vector<double> odd_samples(q), even_samples(q);
    for (std::size_t i = 0; i < q; ++i) {
        odd_samples[i] = std::sin(x[i]);
        even_samples[i] = std::cos(x[i]);
    }
    CHECK_THROWS_AS((void)analyze_even(odd_samples, 4), std::runtime_error);
    CHECK_THROWS_AS((void)analyze_odd(even_samples, 4), std::runtime_error);

    SUBCASE("mixed samples trip too") {
        std::vector<double> mixed(q);
        for (std::size_t i = 0; i < q; ++i) mixed[i] = std::cos(x[i]) + 1e-3 * std::sin(x[i]);
        CHECK_THROWS_AS((void)analyze_even(mixed, 4), std::runtime_error);
    }
}

TEST_CASE("noise floor silences rounding-level parity defects only") {
    const std::size_t q = 32;
    const auto x = fourier_grid(q);

    // Residual-scale even samples polluted with rounding-scale odd content:
    // relative defect is large (the signal is tiny) but absolutely negligible.
    std::vector<double> tiny(q);
    for (std::size_t i = 0; i < q; ++i)
        tiny[i] = 1e-13 * std::cos(x[i]) + 1e-16 * std::sin(x[i]);

    CHECK_THROWS_AS((void)analyze_even(tiny, 4), std::runtime_error);  // strict default
    const EvenSeries a = analyze_even(tiny, 4, 1e-12);                 // floored
    CHECK(a.coeff[0] == doctest::Approx(1e-13).epsilon(1e-6));

    // A genuine O(1) parity violation must still throw through the floor.
    std::vector<double> bad(q);
    for (std::size_t i = 0; i < q; ++i) bad[i] = std::cos(x[i]) + 1e-3 * std::sin(x[i]);
    CHECK_THROWS_AS((void)analyze_even(bad, 4, 1e-12), std::runtime_error);
}

TEST_CASE("parity defect helpers measure the wrong-symmetry energy fraction") {
    const std::size_t q = 64;
    const auto x = fourier_grid(q);
    std::vector<double> v(q);
    for (std::size_t i = 0; i < q; ++i) v[i] = std::cos(x[i]);
    CHECK(odd_parity_defect(v) <= 1e-28);
    for (std::size_t i = 0; i < q; ++i) v[i] = std::sin(x[i]);
    CHECK(even_parity_defect(v) <= 1e-28);
    for (std::size_t i = 0; i < q; ++i) v[i] = std::cos(x[i]) + std::sin(x[i]);
    CHECK(odd_parity_defect(v) == doctest::Approx(0.5));
}

TEST_CASE("differentiation matches finite differences of the sampled curve") {
    EvenSeries u(5);
    u.coeff = {0.3, -0.7, 0.11, 0.0, 0.05};
    const OddSeries du = differentiate(u);

    const double h = 1e-5;
    for (double xv : {0.3, 1.7, 4.1}) {
        const double fd = (sample(u, xv + h) - sample(u, xv - h)) / (2.0 * h);
        CHECK(sample(du, xv) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("differentiation flips parity with the exact mode factors") {
    EvenSeries u(3);
    u.coeff = {0.0, 1.0, 0.0};  // cos 2x
    const OddSeries du = differentiate(u);
    CHECK(du.coeff[1] == doctest::Approx(-2.0));  // -2 sin 2x

    OddSeries p(3);
    p.coeff = {0.0, 0.0, 4.0};  // 4 sin 3x
    const EvenSeries dp = differentiate(p);
    CHECK(dp.coeff[2] == doctest::Approx(12.0));  // 12 cos 3x
}

TEST_CASE("Hilbert transform maps single modes exactly") {
    EvenSeries u(5);
    u.coeff[0] = 1.0;  // cos x
    const OddSeries hu = hilbert(u);
    CHECK(hu.coeff[0] == doctest::Approx(1.0));  // sin x

    EvenSeries u5(5);
    u5.coeff[4] = 1.0;  // cos 5x
    CHECK(hilbert(u5).coeff[4] == doctest::Approx(1.0));  // sin 5x

    OddSeries p(4);
    p.coeff[2] = 2.0;  // 2 sin 3x
    CHECK(hilbert(p).coeff[2] == doctest::Approx(-2.0));  // -2 cos 3x
}

TEST_CASE("Hilbert transform squares to minus the identity on mean-free series") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    EvenSeries u(12);
    for (auto& c : u.coeff) c = unif(rng);

    const EvenSeries hhu = hilbert(hilbert(u));
    for (std::size_t j = 0; j < u.order(); ++j)
        CHECK(hhu.coeff[j] == doctest::Approx(-u.coeff[j]).epsilon(1e-14));
}

TEST_CASE("Hilbert transform commutes with differentiation") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    EvenSeries u(10);
    for (auto& c : u.coeff) c = unif(rng);

    const EvenSeries route_a = differentiate(hilbert(u));
    const EvenSeries route_b = hilbert(differentiate(u));
    CHECK(max_abs_diff(route_a.coeff, route_b.coeff) <= 1e-14);
}

TEST_CASE("half-Laplacian multiplies mode j by j") {
    EvenSeries u(4);
    u.coeff[1] = 1.0;  // cos 2x
    CHECK(half_laplacian(u).coeff[1] == doctest::Approx(2.0));

    OddSeries p(6);
    p.coeff[5] = -0.5;  // -0.5 sin 6x
    CHECK(half_laplacian(p).coeff[5] == doctest::Approx(-3.0));
}

TEST_CASE("half-Laplacian equals Hilbert of the derivative") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    EvenSeries u(9);
    for (auto& c : u.coeff) c = unif(rng);

    // Λu = H(u') on mean-free series: (d/dx)cos jx = -j sin jx, H(sin) = -cos.
    const EvenSeries lam = half_laplacian(u);
    const EvenSeries hd = hilbert(differentiate(u));
    CHECK(max_abs_diff(lam.coeff, hd.coeff) <= 1e-14);
}

TEST_CASE("Parseval: grid energy matches coefficient energy") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::size_t order = 8;
    const std::size_t q = 64;

    EvenSeries u(order);
    for (auto& c : u.coeff) c = unif(rng);
    const auto v = synth(u, q);

    double grid_energy = 0.0;
    for (double vi : v) grid_energy += vi * vi;
    grid_energy /= static_cast<double>(q);

    double coeff_energy = 0.0;
    for (double c : u.coeff) coeff_energy += 0.5 * c * c;

    CHECK(grid_energy == doctest::Approx(coeff_energy).epsilon(1e-13));
}

TEST_CASE("strip norm reference values and monotonicity") {
    SUBCASE("strip width zero reduces to a weighted l2 norm") {
        std::vector<double> c = {1.0};
        // j = 1, k = 0: sqrt((1 + 1) * cosh(0) * 1) = sqrt(2).
        CHECK(strip_norm(c, 0.0, 0.0) == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("single mode j = 2 with k = 1") {
        std::vector<double> c = {0.0, 1.0};
        // (1 + 2^2) cosh(0) = 5.
        CHECK(strip_norm(c, 1.0, 0.0) == doctest::Approx(std::sqrt(5.0)));
    }
    SUBCASE("wider strips weigh high modes more") {
        std::vector<double> c = {0.1, 0.1, 0.1, 0.1};
        const double n0 = strip_norm(c, 1.0, 0.0);
        const double n1 = strip_norm(c, 1.0, 0.25);
        const double n2 = strip_norm(c, 1.0, 0.5);
        CHECK(n0 < n1);
        CHECK(n1 < n2);
    }
    SUBCASE("series overloads agree with the raw-span form") {
        EvenSeries u(3);
        u.coeff = {0.4, -0.2, 0.1};
        CHECK(strip_norm(u, 2.0, 0.3) ==
              doctest::Approx(strip_norm(std::span<const double>(u.coeff), 2.0, 0.3)));
    }
}

TEST_CASE("strip norm rejects negative parameters") {
    std::vector<double> c = {1.0};
    CHECK_THROWS_AS((void)strip_norm(c, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)strip_norm(c, 0.0, -0.1), std::invalid_argument);
}
