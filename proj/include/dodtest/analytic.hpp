#ifndef DODTEST_ANALYTIC_HPP
#define DODTEST_ANALYTIC_HPP

#include <cstdint>
#include <functional>

#include "dodtest/spaces.hpp"

namespace dod {

// Closed-form (or numerically completed) law of the distance of two
// independent uniform draws from a reference space: density, cdf and
// quantile function on [support_lo, support_hi].
struct ClosedFormLaw {
    std::function<double(double)> density;
    std::function<double(double)> cdf;
    std::function<double(double)> quantile;  // defined on (0,1)
    double support_lo = 0.0;
    double support_hi = 1.0;
};

// Unit square with the sup-norm metric:
//   density   u(s) = 4s^3 - 12s^2 + 8s          on [0,1]
//   cdf       U(t) = (2t - t^2)^2
//   quantile  Q(t) = 1 - sqrt(1 - sqrt(t))
ClosedFormLaw square_supnorm_law();

// Disc of diameter one (radius 1/2) with the Euclidean metric:
//   density   u(s) = 8s( (2/pi) acos(s) - (2s/pi) sqrt(1-s^2) )  on [0,1]
// cdf by quadrature (cached cumulative table + local panel), quantile by
// bisection to 1e-12.
ClosedFormLaw disc_euclid_density();

// Union of [0,1]^2 and [5,6]x[0,1] with the sup-norm metric:
//   density   2s^3 - 6s^2 + 4s on [0,1], s/2 - 2 on [4,5), 3 - s/2 on [5,6]
// Support has a gap (1,4); the quantile at cdf levels inside the flat
// stretch returns the left endpoint of the jump (generalized inverse).
ClosedFormLaw union_squares_density();

// First term of the covariance kernel for the unit square / sup-norm space:
// E[ F(t | X) F(t' | X) ] with F(t | x) the conditional distance cdf.
// Piecewise polynomial; arguments are symmetrized internally.
// Throws std::domain_error outside [0,1]^2.
double gamma1_square(double t, double t_prime);

// Monte Carlo estimate of Gamma(t,t') = E[F(t|X) F(t'|X)] - U(t) U(t') for an
// arbitrary sampleable space: n_outer outer draws, two independent inner
// batches of n_inner each (keeps the product term unbiased).
double gamma_kernel_mc(const SpaceSpec& spec, double t, double t_prime,
                       std::size_t n_outer, std::size_t n_inner, std::uint64_t seed);

// J2 functional: integral of U(1-U)/u over the support interior, evaluated
// in the quantile domain as s(1-s) * q'(s)^2 with q' = 1/(u o quantile),
// endpoint panels geometrically refined. Throws std::runtime_error when the
// integral fails to converge under refinement (divergence).
double j2_functional(const ClosedFormLaw& law);

// Envelope parameters for the quantile-derivative growth condition
// |q'(t)| <= c_U * t^gamma1 * (1-t)^gamma2 on (0,1).
struct ConditionParams {
    double c_U = 1.0;
    double gamma1 = -0.5;
    double gamma2 = -0.5;
};

// Checks the envelope bound at `grid` interior points using q' = 1/(u o q).
bool check_condition24(const ClosedFormLaw& law, const ConditionParams& params,
                       std::size_t grid = 1000);

}  // namespace dod

#endif
