#include "dodtest/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "dodtest/quadrature.hpp"
#include "dodtest/ustat.hpp"

namespace dod {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double square_density(double s) {
    if (s < 0.0 || s > 1.0) {
        return 0.0;
    }
    return 4.0 * s * s * s - 12.0 * s * s + 8.0 * s;
}

double square_cdf(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g = 2.0 * t - t * t;
    return g * g;
}

double square_quantile(double t) {
    return 1.0 - std::sqrt(1.0 - std::sqrt(t));
}

double disc_density(double s) {
    if (s <= 0.0 || s >= 1.0) {
        return 0.0;
    }
    return 8.0 * s * ((2.0 / kPi) * std::acos(s) - (2.0 * s / kPi) * std::sqrt(1.0 - s * s));
}

double union_density(double s) {
    if (s >= 0.0 && s <= 1.0) {
        return 2.0 * s * s * s - 6.0 * s * s + 4.0 * s;
    }
    if (s >= 4.0 && s < 5.0) {
        return 0.5 * s - 2.0;
    }
    if (s >= 5.0 && s <= 6.0) {
        return 3.0 - 0.5 * s;
    }
    return 0.0;
}

double union_cdf(double t) {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) {
        // antiderivative of 2s^3 - 6s^2 + 4s
        return 0.5 * t * t * t * t - 2.0 * t * t * t + 2.0 * t * t;
    }
    if (t < 4.0) return 0.5;
    if (t < 5.0) return 0.5 + (0.25 * t * t - 2.0 * t) - (0.25 * 16.0 - 8.0);
    if (t < 6.0) return 0.75 + (3.0 * t - 0.25 * t * t) - (15.0 - 0.25 * 25.0);
    return 1.0;
}

// bisection for the generalized inverse inf{ x : F(x) >= t }
double invert_cdf(const std::function<double(double)>& cdf, double t, double lo, double hi) {
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) >= t) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Cumulative integral of a smooth density on [lo,hi]: fine trapezoid-free
// table (GL per step) plus a local panel from the nearest table node.
class CdfTable {
public:
    CdfTable(std::function<double(double)> density, double lo, double hi, std::size_t cells)
        : density_(std::move(density)), lo_(lo), hi_(hi), cum_(cells + 1, 0.0) {
        const double h = (hi - lo) / static_cast<double>(cells);
        for (std::size_t k = 0; k < cells; ++k) {
            cum_[k + 1] = cum_[k] + gl_integrate(density_, lo + h * static_cast<double>(k),
                                                 lo + h * static_cast<double>(k + 1), 16);
        }
        norm_ = cum_.back();
    }

    double operator()(double x) const {
        if (x <= lo_) return 0.0;
        if (x >= hi_) return 1.0;
        const double h = (hi_ - lo_) / static_cast<double>(cum_.size() - 1);
        auto k = static_cast<std::size_t>((x - lo_) / h);
        if (k >= cum_.size() - 1) k = cum_.size() - 2;
        const double base = lo_ + h * static_cast<double>(k);
        return (cum_[k] + gl_integrate(density_, base, x, 16)) / norm_;
    }

private:
    std::function<double(double)> density_;
    double lo_, hi_;
    std::vector<double> cum_;
    double norm_ = 1.0;
};

}  // namespace

ClosedFormLaw square_supnorm_law() {
    ClosedFormLaw law;
    law.density = square_density;
    law.cdf = square_cdf;
    law.quantile = square_quantile;
    law.support_lo = 0.0;
    law.support_hi = 1.0;
    return law;
}

ClosedFormLaw disc_euclid_density() {
    auto table = std::make_shared<CdfTable>(disc_density, 0.0, 1.0, 4096);
    ClosedFormLaw law;
    law.density = disc_density;
    law.cdf = [table](double x) { return (*table)(x); };
    law.quantile = [table](double t) {
        if (!(t > 0.0 && t < 1.0)) {
            throw std::domain_error("disc quantile: level must lie in (0,1)");
        }
        return invert_cdf([table](double x) { return (*table)(x); }, t, 0.0, 1.0);
    };
    law.support_lo = 0.0;
    law.support_hi = 1.0;
    return law;
}

ClosedFormLaw union_squares_density() {
    ClosedFormLaw law;
    law.density = union_density;
    law.cdf = union_cdf;
    law.quantile = [](double t) {
        if (!(t > 0.0 && t < 1.0)) {
            throw std::domain_error("union-squares quantile: level must lie in (0,1)");
        }
        // flat cdf stretch on (1,4): the generalized inverse jumps; levels at
        // the flat value map to the left endpoint of the jump
        if (t <= 0.5) {
            return invert_cdf(union_cdf, t, 0.0, 1.0);
        }
        return invert_cdf(union_cdf, t, 4.0, 6.0);
    };
    law.support_lo = 0.0;
    law.support_hi = 6.0;
    return law;
}

double gamma1_square(double t, double t_prime) {
    if (!(t >= 0.0 && t <= 1.0) || !(t_prime >= 0.0 && t_prime <= 1.0)) {
        throw std::domain_error("gamma1_square: arguments must lie in [0,1]");
    }
    // the closed form is stated for t' <= t
    const double hi = std::max(t, t_prime);
    const double lo = std::min(t, t_prime);
    double f;
    if (hi < 0.5 || lo <= 1.0 - hi) {
        f = -lo * lo * lo / 3.0 - lo * lo * hi - 2.0 * lo * hi * hi + 4.0 * lo * hi;
    } else {
        // grouped so that f(1,1) evaluates to exactly 1
        f = (hi - lo * hi * hi) + (hi * hi * hi - 1.0) / 3.0 + lo - (lo - hi) * (lo - hi);
    }
    return f * f;
}

double gamma_kernel_mc(const SpaceSpec& spec, double t, double t_prime,
                       std::size_t n_outer, std::size_t n_inner, std::uint64_t seed) {
    if (n_outer < 100 || n_inner < 100) {
        throw std::invalid_argument("gamma_kernel_mc: need n_outer, n_inner >= 100");
    }
    // Two independent inner batches keep E[F(t|X) F(t'|X)] unbiased.
    const PointSample outer = sample(spec, n_outer, mix_seed(seed, 1));
    const PointSample inner_a = sample(spec, n_inner, mix_seed(seed, 2));
    const PointSample inner_b = sample(spec, n_inner, mix_seed(seed, 3));

    double cross = 0.0, mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n_outer; ++i) {
        std::size_t count_a = 0, count_b = 0;
        for (std::size_t j = 0; j < n_inner; ++j) {
            if (distance(outer.points[i], inner_a.points[j], spec.metric) <= t) ++count_a;
            if (distance(outer.points[i], inner_b.points[j], spec.metric) <= t_prime) ++count_b;
        }
        const double fa = static_cast<double>(count_a) / static_cast<double>(n_inner);
        const double fb = static_cast<double>(count_b) / static_cast<double>(n_inner);
        cross += fa * fb;
        mean_a += fa;
        mean_b += fb;
    }
    const double n = static_cast<double>(n_outer);
    return cross / n - (mean_a / n) * (mean_b / n);
}

double j2_functional(const ClosedFormLaw& law) {
    // quantile-domain integrand s(1-s) * q'(s)^2 with q' = 1 / (u o quantile)
    const auto integrand = [&law](double s) {
        const double q = law.quantile(s);
        const double dens = law.density(q);
        const double qprime = 1.0 / dens;
        return s * (1.0 - s) * qprime * qprime;
    };

    // refine endpoint panels until stable; diverging integrals keep growing
    constexpr double kCap = 1e6;
    double prev = 0.0;
    for (std::size_t level = 0; level < 4; ++level) {
        const std::size_t geo = 30 + 15 * level;
        const std::size_t interior = 64 << level;
        const double value = gl_integrate_endpoint_refined(integrand, 0.0, 1.0, geo, interior, 32);
        if (!std::isfinite(value) || value > kCap) {
            throw std::runtime_error("j2_functional: integral diverges");
        }
        if (level > 0 && std::fabs(value - prev) <= 1e-9 * std::max(1.0, std::fabs(value))) {
            return value;
        }
        prev = value;
    }
    throw std::runtime_error("j2_functional: integral failed to converge under refinement");
}

bool check_condition24(const ClosedFormLaw& law, const ConditionParams& params,
                       std::size_t grid) {
    if (grid < 100) {
        throw std::invalid_argument("check_condition24: need grid >= 100");
    }
    for (std::size_t k = 0; k < grid; ++k) {
        const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
        const double q = law.quantile(t);
        const double dens = law.density(q);
        const double envelope =
            params.c_U * std::pow(t, params.gamma1) * std::pow(1.0 - t, params.gamma2);
        if (!(dens > 0.0)) {
            return false;  // quantile derivative unbounded where the density vanishes
        }
        if (std::fabs(1.0 / dens) > envelope) {
            return false;
        }
    }
    return true;
}

}  // namespace dod
