#include "dodtest/limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "dodtest/rng.hpp"

namespace dod {

LimitGrid build_limit_grid(const ClosedFormLaw& law,
                           const std::function<double(double, double)>& gamma, double beta,
                           std::size_t k, double jitter) {
    if (k < 16) {
        throw std::invalid_argument("build_limit_grid: need K >= 16 grid nodes");
    }
    if (!(beta >= 0.0 && beta < 0.5)) {
        throw std::invalid_argument("build_limit_grid: beta must lie in [0, 1/2)");
    }

    LimitGrid grid;
    grid.beta = beta;
    grid.cell_width = (1.0 - 2.0 * beta) / static_cast<double>(k);
    grid.grid.resize(k);
    // midpoint grid: stays strictly inside (0,1) even for beta = 0
    for (std::size_t i = 0; i < k; ++i) {
        grid.grid[i] = beta + (static_cast<double>(i) + 0.5) * grid.cell_width;
    }

    std::vector<double> q(k), dens(k);
    for (std::size_t i = 0; i < k; ++i) {
        q[i] = law.quantile(grid.grid[i]);
        dens[i] = law.density(q[i]);
        if (!(dens[i] > 0.0) || !std::isfinite(dens[i])) {
            throw std::runtime_error("build_limit_grid: density vanishes on the grid");
        }
    }

    grid.covariance.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double value = 4.0 * gamma(q[i], q[j]) / (dens[i] * dens[j]);
            if (!std::isfinite(value)) {
                throw std::runtime_error("build_limit_grid: non-finite covariance entry");
            }
            grid.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
            grid.covariance(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
        }
    }

    const double max_abs = grid.covariance.cwiseAbs().maxCoeff();
    if (max_abs == 0.0) {
        // zero kernel: zero paths
        grid.factor = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                            static_cast<Eigen::Index>(k));
        grid.jitter = 0.0;
        return grid;
    }

    double eps = jitter > 0.0 ? jitter : 1e-10 * max_abs;
    const double eps_max = jitter > 0.0 ? jitter : 1e-7 * max_abs;
    for (;;) {
        Eigen::MatrixXd shifted = grid.covariance;
        shifted.diagonal().array() += eps;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() == Eigen::Success) {
            grid.factor = llt.matrixL();
            grid.jitter = eps;
            return grid;
        }
        if (eps >= eps_max) {
            throw std::runtime_error("build_limit_grid: Cholesky failed after jitter escalation");
        }
        eps *= 10.0;
    }
}

std::vector<double> sample_xi(const LimitGrid& grid, std::size_t n_draws, std::uint64_t seed) {
    if (n_draws < 1) {
        throw std::invalid_argument("sample_xi: need at least one draw");
    }
    const auto k = static_cast<std::size_t>(grid.factor.rows());
    std::vector<double> draws(n_draws);
    Rng g(seed);
    Eigen::VectorXd z(static_cast<Eigen::Index>(k));
    for (std::size_t d = 0; d < n_draws; ++d) {
        for (std::size_t i = 0; i < k; ++i) {
            z(static_cast<Eigen::Index>(i)) = normal01(g);
        }
        const Eigen::VectorXd path = grid.factor * z;
        draws[d] = grid.cell_width * path.squaredNorm();
    }
    return draws;
}

double limit_critical_value(const LimitGrid& grid, double alpha, std::size_t n_draws,
                            std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("limit_critical_value: alpha must lie in (0,1)");
    }
    std::vector<double> draws = sample_xi(grid, n_draws, seed);
    std::sort(draws.begin(), draws.end());
    const double level = 1.0 - alpha;
    auto idx = static_cast<std::size_t>(std::ceil(level * static_cast<double>(n_draws)));
    idx = std::clamp<std::size_t>(idx, 1, n_draws);
    return draws[idx - 1];
}

}  // namespace dod
