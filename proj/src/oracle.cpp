// oracle.cpp — direct Biot–Savart evaluation and equilibrium audit.

#include "vsheet/oracle.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "vsheet/functionals.hpp"

namespace vsheet {

namespace {

constexpr double kDegenerateTangent = 1e-10;

/// Geometry and weight samples of the base sheet on a uniform grid, with
/// spectral first and second derivatives. Self-contained: everything is
/// synthesized directly from the solution's series.
struct OracleSheet {
    double eps = 0.0;
    double offset = 0.0;  // d
    SheetMode mode = SheetMode::co_rotating;
    int fold_count = 2;
    double speed = 0.0;

    std::vector<double> x;
    std::vector<double> zx, zy;      // curve z(x)
    std::vector<double> zpx, zpy;    // z′(x)
    std::vector<double> zppx, zppy;  // z″(x)
    std::vector<double> gam, gamp;   // γ = 1 + εg and γ′

    std::size_t size() const { return x.size(); }
};

OracleSheet build_sheet(const SheetSolution& sol, std::size_t q_count) {
    if (q_count == 0 || q_count % 2 != 0)
        throw std::invalid_argument("oracle: node count must be even and positive");

    OracleSheet s;
    s.eps = sol.epsilon;
    s.offset = sol.config.center_offset;
    s.mode = sol.config.mode;
    s.fold_count = sol.config.fold_count;
    s.speed = sol.speed.total;

    s.x = fourier_grid(q_count);
    const std::vector<double> f = synth(sol.f, q_count);
    const OddSeries f1 = differentiate(sol.f);
    const std::vector<double> fp = synth(f1, q_count);
    const std::vector<double> fpp = synth(differentiate(f1), q_count);
    const std::vector<double> g = synth(sol.g, q_count);
    const std::vector<double> gp = synth(differentiate(sol.g), q_count);

    const double e = s.eps;
    s.zx.resize(q_count);
    s.zy.resize(q_count);
    s.zpx.resize(q_count);
    s.zpy.resize(q_count);
    s.zppx.resize(q_count);
    s.zppy.resize(q_count);
    s.gam.resize(q_count);
    s.gamp.resize(q_count);
    for (std::size_t q = 0; q < q_count; ++q) {
        const double c = std::cos(s.x[q]);
        const double sn = std::sin(s.x[q]);
        const double radius = 1.0 + e * f[q];
        const double rp = e * fp[q];
        const double rpp = e * fpp[q];
        s.zx[q] = e * radius * c;
        s.zy[q] = e * radius * sn;
        s.zpx[q] = e * (rp * c - radius * sn);
        s.zpy[q] = e * (rp * sn + radius * c);
        s.zppx[q] = e * ((rpp - radius) * c - 2.0 * rp * sn);
        s.zppy[q] = e * ((rpp - radius) * sn + 2.0 * rp * c);
        s.gam[q] = 1.0 + e * g[q];
        s.gamp[q] = e * gp[q];
    }
    return s;
}

void require_nondegenerate(const OracleSheet& s) {
    for (std::size_t q = 0; q < s.size(); ++q) {
        const double t2 = s.zpx[q] * s.zpx[q] + s.zpy[q] * s.zpy[q];
        if (std::sqrt(t2) < kDegenerateTangent)
            throw std::domain_error("oracle: degenerate curve, |dz/dx| below 1e-10");
    }
}

/// Self-sheet PV velocity at node p by cotangent subtraction: the kernel
/// minus its exact odd singular model integrates with the plain rule (the
/// model's symmetric sum over the grid vanishes identically), and the
/// diagonal is replaced by the analytic limit of the difference.
Vec2 self_velocity(const OracleSheet& s, std::size_t p) {
    const std::size_t q_count = s.size();
    const double t2 = s.zpx[p] * s.zpx[p] + s.zpy[p] * s.zpy[p];
    // Coefficient of the subtracted model: γ(x) z′(x)^⊥ / |z′(x)|², with
    // perp convention (a1, a2)^⊥ = (a2, −a1).
    const double mx = s.gam[p] * s.zpy[p] / t2;
    const double my = -s.gam[p] * s.zpx[p] / t2;

    double acc_x = 0.0;
    double acc_y = 0.0;
    for (std::size_t q = 0; q < q_count; ++q) {
        if (q == p) continue;
        const double dx = s.zx[p] - s.zx[q];
        const double dy = s.zy[p] - s.zy[q];
        const double dist2 = dx * dx + dy * dy;
        const double cot = 0.5 / std::tan(0.5 * (s.x[p] - s.x[q]));
        acc_x += dy * s.gam[q] / dist2 - mx * cot;
        acc_y += -dx * s.gam[q] / dist2 - my * cot;
    }
    // Analytic diagonal of (kernel − model) as y → x.
    const double dot_pp = s.zpx[p] * s.zppx[p] + s.zpy[p] * s.zppy[p];
    const double diag_x =
        (-s.gamp[p] * s.zpy[p] - 0.5 * s.gam[p] * s.zppy[p] + s.gam[p] * s.zpy[p] * dot_pp / t2) /
        t2;
    const double diag_y =
        (s.gamp[p] * s.zpx[p] + 0.5 * s.gam[p] * s.zppx[p] - s.gam[p] * s.zpx[p] * dot_pp / t2) /
        t2;
    acc_x += diag_x;
    acc_y += diag_y;

    const double inv_q = 1.0 / static_cast<double>(q_count);
    return {-inv_q * acc_x, -inv_q * acc_y};
}

/// Velocity induced at node p of the base sheet by the other sheet copies.
Vec2 companion_velocity(const OracleSheet& s, std::size_t p) {
    const std::size_t q_count = s.size();
    const double d = s.offset;
    double acc_x = 0.0;
    double acc_y = 0.0;

    if (s.mode == SheetMode::co_rotating) {
        for (int i = 1; i < s.fold_count; ++i) {
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(i) / s.fold_count;
            const double cth = std::cos(theta);
            const double sth = std::sin(theta);
            for (std::size_t q = 0; q < q_count; ++q) {
                const double wx = s.zx[q] - d;
                const double wy = s.zy[q];
                const double dx = s.zx[p] - (d + cth * wx - sth * wy);
                const double dy = s.zy[p] - (sth * wx + cth * wy);
                const double dist2 = dx * dx + dy * dy;
                acc_x -= dy * s.gam[q] / dist2;
                acc_y += dx * s.gam[q] / dist2;
            }
        }
    } else {
        // Opposite-sign mirror sheet through (d, 0): the sign flip of the
        // weight cancels the overall minus of the velocity convention.
        for (std::size_t q = 0; q < q_count; ++q) {
            const double dx = s.zx[p] - (2.0 * d - s.zx[q]);
            const double dy = s.zy[p] - (-s.zy[q]);
            const double dist2 = dx * dx + dy * dy;
            acc_x += dy * s.gam[q] / dist2;
            acc_y -= dx * s.gam[q] / dist2;
        }
    }
    const double inv_q = 1.0 / static_cast<double>(q_count);
    return {inv_q * acc_x, inv_q * acc_y};
}

Vec2 node_velocity(const OracleSheet& s, std::size_t p) {
    const Vec2 self = self_velocity(s, p);
    const Vec2 far = companion_velocity(s, p);
    return {self.x + far.x, self.y + far.y};
}

/// Velocity of the co-moving frame at a curve point (the term added to the
/// fluid velocity in the steady conditions).
Vec2 frame_velocity(const OracleSheet& s, std::size_t p) {
    if (s.mode == SheetMode::co_rotating) {
        const double wx = s.zx[p] - s.offset;
        const double wy = s.zy[p];
        return {s.speed * wy, -s.speed * wx};  // Ω (z − d e₁)^⊥
    }
    return {0.0, -s.speed};  // −W e₂
}

}  // namespace

VelocitySample br_velocity(const SheetSolution& sol, std::size_t node_index) {
    const std::size_t q_count = sol.config.quadrature_size;
    if (node_index >= q_count)
        throw std::invalid_argument(
            "br_velocity: evaluation point is not a grid node (PV misalignment)");
    const OracleSheet s = build_sheet(sol, q_count);
    require_nondegenerate(s);
    VelocitySample vs;
    vs.point = {s.zx[node_index], s.zy[node_index]};
    vs.velocity = node_velocity(s, node_index);
    return vs;
}

EquilibriumReport equilibrium_residual(const SheetSolution& sol, std::size_t oracle_q) {
    const OracleSheet s = build_sheet(sol, oracle_q);
    require_nondegenerate(s);
    const std::size_t q_count = s.size();

    std::vector<double> normal_res(q_count);
    std::vector<double> tangent_flux(q_count);

    const auto audit_node = [&](std::size_t p) {
        const Vec2 v = node_velocity(s, p);
        const Vec2 frame = frame_velocity(s, p);
        const double ux = v.x + frame.x;
        const double uy = v.y + frame.y;
        const double tnorm = std::sqrt(s.zpx[p] * s.zpx[p] + s.zpy[p] * s.zpy[p]);
        const double sx = s.zpx[p] / tnorm;
        const double sy = s.zpy[p] / tnorm;
        // n = s^⊥ is the outward unit normal for this parameterization.
        normal_res[p] = ux * sy - uy * sx;
        tangent_flux[p] = (ux * sx + uy * sy) * s.gam[p] / tnorm;
    };

    // Node audits are independent; a small worker pool processes them.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t worker_count = std::min<std::size_t>(hw, q_count);
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t p = next.fetch_add(1); p < q_count; p = next.fetch_add(1))
                audit_node(p);
        }));
    }
    for (auto& w : workers) w.get();

    EquilibriumReport report;
    double mean_flux = 0.0;
    for (double t : tangent_flux) mean_flux += t;
    mean_flux /= static_cast<double>(q_count);
    report.tangential_mean = mean_flux;
    for (std::size_t p = 0; p < q_count; ++p) {
        report.normal_residual_sup =
            std::max(report.normal_residual_sup, std::abs(normal_res[p]));
        report.tangential_constancy =
            std::max(report.tangential_constancy, std::abs(tangent_flux[p] - mean_flux));
    }

    const CurvatureProfile curv = curvature_profile(sol);
    report.curvature_min = curv.min;
    report.curve_is_convex = curv.convex;
    return report;
}

CurvatureProfile curvature_profile(const SheetSolution& sol) {
    const std::size_t q_count = sol.config.quadrature_size;
    const double e = sol.epsilon;
    const std::vector<double> f = synth(sol.f, q_count);
    const OddSeries f1 = differentiate(sol.f);
    const std::vector<double> fp = synth(f1, q_count);
    const std::vector<double> fpp = synth(differentiate(f1), q_count);

    CurvatureProfile profile;
    profile.scaled.values.resize(q_count);
    profile.min = 1e300;
    for (std::size_t q = 0; q < q_count; ++q) {
        const double radius = 1.0 + e * f[q];
        const double rp = e * fp[q];
        const double rpp = e * fpp[q];
        const double denom = std::pow(radius * radius + rp * rp, 1.5);
        const double scaled =
            (radius * radius + 2.0 * rp * rp - radius * rpp) / denom;
        profile.scaled.values[q] = scaled;
        profile.min = std::min(profile.min, scaled);
    }
    profile.convex = profile.min > 0.0;
    return profile;
}

double mirror_check(const SheetSolution& sol) {
    EvenSeries f_mirror = sol.f;
    EvenSeries g_mirror = sol.g;
    for (std::size_t k = 0; k < f_mirror.order(); ++k)
        if (k % 2 == 1) f_mirror.coeff[k] = -f_mirror.coeff[k];  // flip even j = k+1
    for (std::size_t k = 0; k < g_mirror.order(); ++k)
        if (k % 2 == 1) g_mirror.coeff[k] = -g_mirror.coeff[k];
    const SheetState mirrored(-sol.epsilon, std::move(f_mirror), std::move(g_mirror));
    return closed_residual(sol.config, mirrored).residual_sup;
}

}  // namespace vsheet
