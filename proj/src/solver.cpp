// solver.cpp — reduced Newton iteration and ε-continuation.

#include "vsheet/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vsheet/linear.hpp"
#include "vsheet/quadrature.hpp"

namespace vsheet {

namespace {

constexpr double kSingularFloor = 1e-12;  // smallest tolerated singular value

std::vector<CurvePoint> sample_curve(const SheetConfig& cfg, const SheetState& state) {
    const std::vector<double> x = fourier_grid(cfg.quadrature_size);
    const std::vector<double> f_vals = synth(state.f, cfg.quadrature_size);
    std::vector<CurvePoint> curve(cfg.quadrature_size);
    for (std::size_t q = 0; q < cfg.quadrature_size; ++q) {
        const double radius = state.epsilon * (1.0 + state.epsilon * f_vals[q]);
        curve[q] = {x[q], radius * std::cos(x[q]), radius * std::sin(x[q])};
    }
    return curve;
}

SheetSolution package(const SheetConfig& cfg, const SheetState& state, const ClosedResidual& r,
                      int iters, std::vector<double> history) {
    SheetSolution sol;
    sol.config = cfg;
    sol.epsilon = state.epsilon;
    sol.speed = r.speed;
    sol.f = state.f;
    sol.g = state.g;
    sol.residual_sup = r.residual_sup;
    sol.residual_l2 = r.residual_l2;
    sol.newton_iters = iters;
    sol.residual_history = std::move(history);
    sol.curve = sample_curve(cfg, state);
    return sol;
}

/// Seed for the next continuation target from the accepted solutions so far.
SheetState predict_seed(const std::vector<SheetSolution>& priors, double eps,
                        std::size_t order) {
    if (priors.empty()) return from_reduced(std::vector<double>(2 * order - 1, 0.0), eps, order);
    const SheetSolution& s1 = priors.back();
    const std::vector<double> r1 = to_reduced(SheetState(s1.epsilon, s1.f, s1.g), order);
    if (priors.size() == 1) return from_reduced(r1, eps, order);
    const SheetSolution& s2 = priors[priors.size() - 2];
    const std::vector<double> r2 = to_reduced(SheetState(s2.epsilon, s2.f, s2.g), order);
    const double slope = (eps - s1.epsilon) / (s1.epsilon - s2.epsilon);
    std::vector<double> seed(r1.size());
    for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = r1[i] + slope * (r1[i] - r2[i]);
    return from_reduced(seed, eps, order);
}

}  // namespace

SheetSolution newton_solve(const SheetConfig& cfg, double epsilon, const SheetState& guess) {
    cfg.validate();
    if (!(std::abs(epsilon) < 0.5))
        throw std::domain_error("newton_solve: |epsilon| must be < 1/2");

    // Normalize the guess onto the reduced coordinate space at the target ε.
    SheetState state =
        from_reduced(to_reduced(guess, cfg.series_order), epsilon, cfg.series_order);

    ClosedResidual res = closed_residual(cfg, state);
    std::vector<double> history{res.residual_sup};

    int iters = 0;
    while (res.residual_sup > cfg.newton_tol) {
        if (iters >= cfg.newton_max_iter) {
            std::ostringstream msg;
            msg << "newton_solve: iteration budget exhausted at residual "
                << std::scientific << res.residual_sup;
            throw std::runtime_error(msg.str());
        }

        const Eigen::MatrixXd jac = numerical_jacobian(cfg, state);
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
        if (svd.singularValues().minCoeff() < kSingularFloor)
            throw std::runtime_error(
                "newton_solve: Jacobian numerically singular (sigma_min < 1e-12)");

        const std::vector<double> reduced = to_reduced(state, cfg.series_order);
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(reduced.size()));
        for (std::size_t i = 0; i < reduced.size(); ++i)
            rhs[static_cast<Eigen::Index>(i)] = -res.reduced[i];
        const Eigen::VectorXd delta = jac.partialPivLu().solve(rhs);

        const auto stepped = [&](double fraction) {
            std::vector<double> next = reduced;
            for (std::size_t i = 0; i < next.size(); ++i)
                next[i] += fraction * delta[static_cast<Eigen::Index>(i)];
            return from_reduced(next, epsilon, cfg.series_order);
        };

        // Full step, then a single backtracking halving if it fails — either
        // by leaving the admissible set or by not decreasing the residual.
        SheetState candidate = stepped(1.0);
        bool have_candidate = false;
        ClosedResidual cand_res;
        try {
            cand_res = closed_residual(cfg, candidate);
            have_candidate = true;
        } catch (const std::domain_error&) {
            have_candidate = false;
        }
        if (!have_candidate || cand_res.residual_sup >= res.residual_sup) {
            SheetState half = stepped(0.5);
            // An inadmissible half step propagates the domain_error: the
            // line search has left the neighborhood the method is built for.
            const ClosedResidual half_res = closed_residual(cfg, half);
            if (!have_candidate || half_res.residual_sup < cand_res.residual_sup) {
                candidate = std::move(half);
                cand_res = half_res;
            }
            if (cand_res.residual_sup >= res.residual_sup)
                throw std::runtime_error(
                    "newton_solve: line search failed to reduce the residual");
        }

        state = std::move(candidate);
        res = std::move(cand_res);
        history.push_back(res.residual_sup);
        ++iters;
    }
    return package(cfg, state, res, iters, std::move(history));
}

SheetSolution newton_solve(const SheetConfig& cfg, double epsilon) {
    return newton_solve(cfg, epsilon, SheetState(epsilon, EvenSeries(cfg.series_order),
                                                 EvenSeries(cfg.series_order)));
}

ContinuationRun continue_family(const SheetConfig& cfg, std::span<const double> eps_targets) {
    cfg.validate();
    ContinuationRun run;
    run.config = cfg;
    if (eps_targets.empty())
        throw std::invalid_argument("continue_family: at least one epsilon target is required");

    const double direction = (eps_targets.front() > 0.0) ? 1.0 : -1.0;
    double prev_abs = 0.0;
    for (double t : eps_targets) {
        if (t * direction <= prev_abs)
            throw std::invalid_argument(
                "continue_family: targets must be strictly monotone away from zero "
                "with a single sign");
        prev_abs = t * direction;
    }

    for (double target : eps_targets) {
        int halvings = 0;
        double goal = target;
        while (true) {
            const SheetState seed = predict_seed(run.solutions, goal, cfg.series_order);
            bool accepted = false;
            std::string why;
            try {
                run.solutions.push_back(newton_solve(cfg, goal, seed));
                accepted = true;
            } catch (const std::exception& e) {
                why = e.what();
            }
            if (accepted) {
                if (goal == target) break;  // requested target reached
                goal = target;              // resume toward the requested target
                continue;
            }
            ++halvings;
            if (halvings > 5) {
                run.truncated = true;
                std::ostringstream reason;
                reason << "step halving exhausted approaching eps = " << target << ": " << why;
                run.failure_reason = reason.str();
                if (!run.solutions.empty())
                    run.empirical_eps0 = std::abs(run.solutions.back().epsilon);
                return run;
            }
            const double base = run.solutions.empty() ? 0.0 : run.solutions.back().epsilon;
            goal = base + 0.5 * (goal - base);
        }
    }
    if (!run.solutions.empty())
        run.empirical_eps0 = std::abs(run.solutions.back().epsilon);
    return run;
}

SpectralDiagnostics spectral_diagnostics(const SheetSolution& sol) {
    SpectralDiagnostics diag;

    double total = 0.0;
    double tail = 0.0;
    const std::size_t order = std::max(sol.f.order(), sol.g.order());
    const std::size_t tail_start = order - order / 4;  // top quartile: j > 3N/4
    for (std::size_t k = 0; k < order; ++k) {
        const double af = k < sol.f.order() ? sol.f.coeff[k] : 0.0;
        const double bg = k < sol.g.order() ? sol.g.coeff[k] : 0.0;
        const double e = af * af + bg * bg;
        total += e;
        if (k + 1 > tail_start) tail += e;
    }
    diag.tail_ratio = (total > 0.0) ? tail / total : 0.0;

    // Least-squares fit of log|a_j| = log C + j log ρ over resolved modes.
    double sj = 0.0, sl = 0.0, sjj = 0.0, sjl = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < sol.f.order(); ++k) {
        const double a = std::abs(sol.f.coeff[k]);
        if (a <= 1e-14) continue;
        const double j = static_cast<double>(k + 1);
        const double l = std::log(a);
        sj += j;
        sl += l;
        sjj += j * j;
        sjl += j * l;
        ++n;
    }
    if (n >= 2) {
        const double denom = static_cast<double>(n) * sjj - sj * sj;
        if (denom != 0.0) {
            const double slope = (static_cast<double>(n) * sjl - sj * sl) / denom;
            diag.decay_rate = std::exp(slope);
        }
    }
    return diag;
}

}  // namespace vsheet
