#ifndef DODTEST_LIMIT_HPP
#define DODTEST_LIMIT_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dodtest/analytic.hpp"

namespace dod {

// Discretization of the null-limit Gaussian process on [beta, 1-beta]:
// K midpoint grid nodes, the process covariance on the grid, and a lower
// triangular factor with factor * factor^T = covariance + jitter * I.
struct LimitGrid {
    std::vector<double> grid;   // midpoints t_k in (beta, 1-beta)
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd factor;
    double beta = 0.0;
    double jitter = 0.0;
    double cell_width = 0.0;    // (1 - 2 beta) / K
};

// Covariance entries: 4 * gamma(q(t_i), q(t_j)) / (u(q(t_i)) * u(q(t_j)))
// with q the quantile and u the density of the distance law. `gamma` is the
// centered indicator-covariance kernel in the distance domain. Cholesky with
// additive jitter escalated by factors of 10 over three decades; throws
// std::runtime_error if the factorization still fails.
//
// beta = 0 is allowed because the grid uses midpoints and never touches the
// endpoints of (0,1).
LimitGrid build_limit_grid(const ClosedFormLaw& law,
                           const std::function<double(double, double)>& gamma,
                           double beta, std::size_t k = 512, double jitter = -1.0);

// Draws of Xi = integral over [beta,1-beta] of G(t)^2 dt: path = factor * z
// with z standard normal, midpoint Riemann sum of the squared path.
std::vector<double> sample_xi(const LimitGrid& grid, std::size_t n_draws, std::uint64_t seed);

// Critical value for a level-alpha test: the empirical (1-alpha)-quantile
// (order statistic ceil((1-alpha) * n_draws)) of fresh Xi draws.
double limit_critical_value(const LimitGrid& grid, double alpha, std::size_t n_draws,
                            std::uint64_t seed);

}  // namespace dod

#endif
