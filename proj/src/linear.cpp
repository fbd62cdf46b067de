// linear.cpp — base-point linearization and the numerical Jacobian.

#include "vsheet/linear.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

namespace vsheet {

FreqBlock block(int frequency) {
    if (frequency < 1) throw std::invalid_argument("block: frequency must be >= 1");
    const double j = static_cast<double>(frequency);
    FreqBlock b;
    b.frequency = frequency;
    b.matrix << -0.5 * j, 0.5, 0.5 * (2.0 - j), -0.5;
    b.determinant = 0.5 * (j - 1.0);
    return b;
}

Eigen::Matrix2d block_inverse(int frequency) {
    if (frequency < 2)
        throw std::invalid_argument(
            "block_inverse: the j = 1 block is singular; use the gauge/closure path");
    const double j = static_cast<double>(frequency);
    Eigen::Matrix2d inv;
    inv << -1.0 / (j - 1.0), -1.0 / (j - 1.0), (j - 2.0) / (j - 1.0), -j / (j - 1.0);
    return inv;
}

BasePair apply_base_linearization(const EvenSeries& shape, const EvenSeries& weight) {
    const std::size_t order = std::max(shape.order(), weight.order());
    EvenSeries h1 = shape;
    EvenSeries h2 = weight;
    h1.coeff.resize(order, 0.0);
    h2.coeff.resize(order, 0.0);

    const OddSeries dh1 = differentiate(h1);
    const OddSeries hh2 = hilbert(h2);
    const EvenSeries lh1 = half_laplacian(h1);

    BasePair out;
    out.normal = OddSeries(order);
    out.tangent = EvenSeries(order);
    for (std::size_t k = 0; k < order; ++k) {
        out.normal.coeff[k] = 0.5 * dh1.coeff[k] + 0.5 * hh2.coeff[k];
        out.tangent.coeff[k] = h1.coeff[k] - 0.5 * lh1.coeff[k] - 0.5 * h2.coeff[k];
    }
    return out;
}

BaseSolution solve_base_linearization(const OddSeries& p, const EvenSeries& q) {
    const std::size_t order = std::max(p.order(), q.order());
    if (order == 0) throw std::invalid_argument("solve_base_linearization: empty data");
    OddSeries pp = p;
    EvenSeries qq = q;
    pp.coeff.resize(order, 0.0);
    qq.coeff.resize(order, 0.0);

    const double p1 = pp.coeff[0];
    const double q1 = qq.coeff[0];
    const double scale = std::max({1.0, std::abs(p1), std::abs(q1)});
    if (std::abs(p1 + q1) > 1e-10 * scale)
        throw std::invalid_argument(
            "solve_base_linearization: first-mode data violates the compatibility "
            "relation p1 + q1 = 0 (not in the range of the base operator)");

    BaseSolution sol;
    sol.shape = EvenSeries(order);
    sol.weight = EvenSeries(order);
    sol.shape.coeff[0] = -p1;
    sol.weight.coeff[0] = p1;
    for (std::size_t k = 1; k < order; ++k) {
        const Eigen::Matrix2d inv = block_inverse(static_cast<int>(k) + 1);
        const Eigen::Vector2d rhs(pp.coeff[k], qq.coeff[k]);
        const Eigen::Vector2d ab = inv * rhs;
        sol.shape.coeff[k] = ab[0];
        sol.weight.coeff[k] = ab[1];
    }
    return sol;
}

Eigen::MatrixXd base_reduced_jacobian(std::size_t order) {
    if (order == 0) throw std::invalid_argument("base_reduced_jacobian: order must be >= 1");
    const std::size_t dim = 2 * order - 1;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    // j = 1: only the a1 column exists; the gauge moves b1 = -a1 along with
    // it, so the p1 row sees M1(0,0) - M1(0,1) = -1.
    jac(0, 0) = -1.0;
    for (std::size_t k = 1; k < order; ++k) {
        const FreqBlock b = block(static_cast<int>(k) + 1);
        const Eigen::Index row_p = static_cast<Eigen::Index>(k);
        const Eigen::Index row_q = static_cast<Eigen::Index>(order + k - 1);
        const Eigen::Index col_a = static_cast<Eigen::Index>(k);
        const Eigen::Index col_b = static_cast<Eigen::Index>(order + k - 1);
        jac(row_p, col_a) = b.matrix(0, 0);
        jac(row_p, col_b) = b.matrix(0, 1);
        jac(row_q, col_a) = b.matrix(1, 0);
        jac(row_q, col_b) = b.matrix(1, 1);
    }
    return jac;
}

namespace {

std::vector<double> column_difference(const SheetConfig& cfg, const SheetState& state,
                                      const std::vector<double>& reduced, std::size_t column,
                                      double step) {
    std::vector<double> plus = reduced;
    std::vector<double> minus = reduced;
    plus[column] += step;
    minus[column] -= step;
    const ClosedResidual rp =
        closed_residual(cfg, from_reduced(plus, state.epsilon, cfg.series_order));
    const ClosedResidual rm =
        closed_residual(cfg, from_reduced(minus, state.epsilon, cfg.series_order));
    std::vector<double> col(rp.reduced.size());
    for (std::size_t i = 0; i < col.size(); ++i)
        col[i] = (rp.reduced[i] - rm.reduced[i]) / (2.0 * step);
    return col;
}

}  // namespace

Eigen::MatrixXd numerical_jacobian(const SheetConfig& cfg, const SheetState& state,
                                   double step) {
    cfg.validate();
    if (!(step > 0.0)) throw std::invalid_argument("numerical_jacobian: step must be > 0");
    const std::size_t dim = 2 * cfg.series_order - 1;
    const std::vector<double> reduced = to_reduced(state, cfg.series_order);

    const auto one_column = [&](std::size_t k) {
        try {
            return column_difference(cfg, state, reduced, k, step);
        } catch (const std::domain_error&) {
            // The shifted state may have left the admissible set; one retry
            // with a smaller step, then give up.
            return column_difference(cfg, state, reduced, k, step / 10.0);
        }
    };

    // Columns are independent pure evaluations; a fixed pool of workers pulls
    // them off a shared counter. Results are identical to the serial order.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t worker_count = std::min<std::size_t>(hw, dim);
    std::vector<std::vector<double>> columns(dim);
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t k = next.fetch_add(1); k < dim; k = next.fetch_add(1))
                columns[k] = one_column(k);
        }));
    }
    for (auto& w : workers) w.get();  // re-throws the first worker failure

    Eigen::MatrixXd jac(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t i = 0; i < dim; ++i)
            jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = columns[k][i];
    return jac;
}

}  // namespace vsheet
