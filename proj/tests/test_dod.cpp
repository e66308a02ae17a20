#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dodtest/analytic.hpp"
#include "dodtest/dod.hpp"
#include "dodtest/parallel.hpp"
#include "dodtest/quadrature.hpp"
#include "dodtest/spaces.hpp"
#include "test_support.hpp"

using namespace dod;

namespace {

PointSample rigid_motion(const PointSample& s, double angle, double tx, double ty, bool reflect) {
    PointSample out = s;
    const double c = std::cos(angle), sn = std::sin(angle);
    for (auto& pt : out.points) {
        double x = pt.x(), y = pt.y();
        if (reflect) {
            x = -x;
        }
        pt = Point(c * x - sn * y + tx, sn * x + c * y + ty);
    }
    return out;
}

}  // namespace

TEST_CASE("dod_statistic basics") {
    const auto x = sample(SpaceSpec::unit_square(), 30, 5);
    const auto r0 = dod_statistic(x, x, 0.01, 2.0);
    CHECK(r0.statistic == 0.0);
    CHECK(r0.scaled == 0.0);
    CHECK(r0.n == 30);
    CHECK(r0.m == 30);

    // scaled carries nm/(n+m) with point counts
    const auto y = sample(SpaceSpec::disc(0.5), 20, 6);
    const auto r = dod_statistic(x, y, 0.0, 2.0);
    CHECK(r.scaled == doctest::Approx(30.0 * 20.0 / 50.0 * r.statistic).epsilon(1e-15));
    CHECK(r.statistic >= 0.0);

    PointSample tiny;
    tiny.points = {Point(0, 0)};
    CHECK_THROWS_AS(dod_statistic(tiny, x, 0.01, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(dod_statistic(x, y, 0.6, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(dod_statistic(x, y, 0.01, 0.5), std::invalid_argument);
}

TEST_CASE("dod_statistic equals the order-statistic form for n = m") {
    Rng g(99);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(uniform01(g) * 30);
        const auto x = sample(SpaceSpec::unit_square(), n, mix_seed(1000, trial));
        const auto y = sample(SpaceSpec::unit_square(), n, mix_seed(2000, trial));
        const auto dx = pairwise(x).sorted;
        const auto dy = pairwise(y).sorted;
        double direct = 0.0;
        for (std::size_t i = 0; i < dx.size(); ++i) {
            direct += (dx[i] - dy[i]) * (dx[i] - dy[i]);
        }
        direct *= 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
        const auto r = dod_statistic(x, y, 0.0, 2.0);
        CHECK(r.statistic == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("degenerate samples give zero") {
    PointSample x;
    x.points = {Point(0.3, 0.3), Point(0.3, 0.3), Point(0.3, 0.3)};
    PointSample y;
    y.points = {Point(4.0, -1.0), Point(4.0, -1.0)};
    const auto r = dod_statistic(x, y, 0.01, 2.0);
    CHECK(r.statistic == 0.0);  // both distance laws are a point mass at zero
}

TEST_CASE("dod_test decision rule") {
    const auto x = sample(SpaceSpec::unit_square(), 25, 1);
    const auto out = dod_test(x, x, 0.01, 0.05, 0.5, Calibration::LimitMC);
    CHECK_FALSE(out.reject);
    CHECK(out.scaled_statistic == 0.0);
    CHECK(out.calibration == Calibration::LimitMC);

    const auto y = sample(SpaceSpec::disc(0.2), 25, 2);
    const auto strong = dod_test(x, y, 0.01, 0.05, 1e-9, Calibration::Bootstrap);
    CHECK(strong.reject == (strong.scaled_statistic > 1e-9));
    CHECK_THROWS_AS(dod_test(x, y, 0.01, 1.5, 0.5, Calibration::Bootstrap),
                    std::invalid_argument);
    CHECK_THROWS_AS(dod_test(x, y, 0.01, 0.05, -1.0, Calibration::Bootstrap),
                    std::invalid_argument);
}

TEST_CASE("isometry invariance, symmetry, trimming monotonicity") {
    const auto x = sample(SpaceSpec::unit_square(), 60, 11);
    const auto y = sample(SpaceSpec::square_cap_disc(0.55), 50, 12);

    const double base = dod_statistic(x, y, 0.01, 2.0).statistic;
    const auto moved = rigid_motion(x, 0.7321, -3.5, 11.25, true);
    const double after = dod_statistic(moved, y, 0.01, 2.0).statistic;
    CHECK(std::fabs(after - base) <= 1e-12 * std::max(base, 1e-30));

    CHECK(dod_statistic(x, y, 0.01, 2.0).statistic ==
          dod_statistic(y, x, 0.01, 2.0).statistic);

    double prev = dod_statistic(x, y, 0.0, 2.0).statistic;
    for (double beta : {0.01, 0.05, 0.1, 0.25, 0.4}) {
        const double cur = dod_statistic(x, y, beta, 2.0).statistic;
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("expectation bound of the square-law null") {
    // mean over replications stays below (8/(n+1) + 8/(m+1)) * J2
    const std::size_t n = 100, reps = 300;
    std::vector<double> stats(reps);
    parallel_for(reps, [&](std::size_t rep) {
        const auto x = sample(SpaceSpec::unit_square(Metric::SupNorm), n, mix_seed(42, 2 * rep));
        const auto y =
            sample(SpaceSpec::unit_square(Metric::SupNorm), n, mix_seed(42, 2 * rep + 1));
        stats[rep] = dod_statistic(x, y, 0.0, 2.0).statistic;
    });
    const double bound = (8.0 / (n + 1.0) + 8.0 / (n + 1.0)) * (5.0 / 48.0);
    const double se = oracle::stddev(stats) / std::sqrt(static_cast<double>(reps));
    CHECK(oracle::mean(stats) <= bound + 3.0 * se);
}

TEST_CASE("dod_independent uses floor(n/2) paired distances") {
    const auto x = sample(SpaceSpec::unit_square(), 4, 3);
    const auto r = dod_independent(x, x, 0.0, 2.0);
    CHECK(r.n == 2);
    CHECK(r.m == 2);
    CHECK(r.statistic == 0.0);  // identical pairing on both sides

    const auto odd = sample(SpaceSpec::unit_square(), 9, 4);
    const auto ro = dod_independent(odd, odd, 0.0, 2.0);
    CHECK(ro.n == 4);

    // effective-size scaling
    const auto y = sample(SpaceSpec::disc(0.5), 12, 5);
    const auto rxy = dod_independent(x, y, 0.0, 2.0);
    CHECK(rxy.scaled == doctest::Approx(2.0 * 6.0 / 8.0 * rxy.statistic).epsilon(1e-15));
}

TEST_CASE("alternative_variance vanishes in degenerate regimes") {
    const auto law = square_supnorm_law();
    const auto gamma = [&law](double s, double t) {
        return gamma1_square(s, t) - law.cdf(s) * law.cdf(t);
    };
    const auto zero_kernel = [](double, double) { return 0.0; };

    // identical laws: the weight x - V^-1(U(x)) is identically zero
    const double null_value = alternative_variance(law.quantile, law.cdf, law.quantile, law.cdf,
                                                   gamma, gamma, 0.01, 0.5, 64);
    CHECK(std::fabs(null_value) < 1e-18);

    const double no_kernel = alternative_variance(
        law.quantile, law.cdf, law.quantile, law.cdf, zero_kernel, zero_kernel, 0.01, 0.5, 64);
    CHECK(no_kernel == 0.0);

    CHECK_THROWS_AS(alternative_variance(law.quantile, law.cdf, law.quantile, law.cdf, gamma,
                                         gamma, 0.0, 0.5, 32),
                    std::invalid_argument);
}

namespace {

// Monte Carlo estimate of the indicator-covariance kernel on a rectangle of
// the distance domain, bilinearly interpolated. Used where no closed form of
// Gamma exists (the disc here).
class McGammaGrid {
public:
    McGammaGrid(const SpaceSpec& spec, double lo, double hi, std::size_t grid,
                std::size_t n_outer, std::size_t n_inner, std::uint64_t seed)
        : lo_(lo), hi_(hi), grid_(grid), cross_(grid * grid), mean_a_(grid), mean_b_(grid) {
        const PointSample outer = sample(spec, n_outer, mix_seed(seed, 1));
        const PointSample batch_a = sample(spec, n_inner, mix_seed(seed, 2));
        const PointSample batch_b = sample(spec, n_inner, mix_seed(seed, 3));

        std::vector<double> fa(grid), fb(grid);
        std::vector<double> da(n_inner), db(n_inner);
        for (std::size_t i = 0; i < n_outer; ++i) {
            for (std::size_t j = 0; j < n_inner; ++j) {
                da[j] = distance(outer.points[i], batch_a.points[j], spec.metric);
                db[j] = distance(outer.points[i], batch_b.points[j], spec.metric);
            }
            std::sort(da.begin(), da.end());
            std::sort(db.begin(), db.end());
            for (std::size_t k = 0; k < grid; ++k) {
                const double t = node(k);
                fa[k] = static_cast<double>(std::upper_bound(da.begin(), da.end(), t) -
                                            da.begin()) /
                        static_cast<double>(n_inner);
                fb[k] = static_cast<double>(std::upper_bound(db.begin(), db.end(), t) -
                                            db.begin()) /
                        static_cast<double>(n_inner);
            }
            for (std::size_t k = 0; k < grid; ++k) {
                mean_a_[k] += fa[k];
                mean_b_[k] += fb[k];
                for (std::size_t l = 0; l < grid; ++l) {
                    cross_[k * grid + l] += fa[k] * fb[l];
                }
            }
        }
        const double n = static_cast<double>(n_outer);
        for (auto& v : cross_) v /= n;
        for (auto& v : mean_a_) v /= n;
        for (auto& v : mean_b_) v /= n;
    }

    double operator()(double s, double t) const { return interp(s, t); }

private:
    double node(std::size_t k) const {
        return lo_ + (hi_ - lo_) * static_cast<double>(k) / static_cast<double>(grid_ - 1);
    }

    double value(std::size_t k, std::size_t l) const {
        return cross_[k * grid_ + l] - mean_a_[k] * mean_b_[l];
    }

    double interp(double s, double t) const {
        const double h = (hi_ - lo_) / static_cast<double>(grid_ - 1);
        const double us = std::clamp((s - lo_) / h, 0.0, static_cast<double>(grid_ - 1));
        const double ut = std::clamp((t - lo_) / h, 0.0, static_cast<double>(grid_ - 1));
        const auto k = std::min(static_cast<std::size_t>(us), grid_ - 2);
        const auto l = std::min(static_cast<std::size_t>(ut), grid_ - 2);
        const double fs = us - static_cast<double>(k);
        const double ft = ut - static_cast<double>(l);
        return (1 - fs) * (1 - ft) * value(k, l) + fs * (1 - ft) * value(k + 1, l) +
               (1 - fs) * ft * value(k, l + 1) + fs * ft * value(k + 1, l + 1);
    }

    double lo_, hi_;
    std::size_t grid_;
    std::vector<double> cross_, mean_a_, mean_b_;
};

}  // namespace

TEST_CASE("alternative_variance matches the empirical limiting variance") {
    // X: unit square with sup-norm (all closed forms); Y: disc of diameter
    // one with Euclidean metric (density closed form, kernel by Monte Carlo)
    const auto square = square_supnorm_law();
    const auto disc = disc_euclid_density();
    const auto gamma_square = [&square](double s, double t) {
        return gamma1_square(s, t) - square.cdf(s) * square.cdf(t);
    };

    const double beta = 0.01;
    const SpaceSpec disc_spec = SpaceSpec::disc(0.5);
    const McGammaGrid gamma_disc(disc_spec, disc.quantile(beta / 2.0),
                                 disc.quantile(1.0 - beta / 2.0), 96, 3000, 3000, 77);

    const double predicted = alternative_variance(
        square.quantile, square.cdf, disc.quantile, disc.cdf, gamma_square,
        [&gamma_disc](double s, double t) { return gamma_disc(s, t); }, beta, 0.5, 48);

    // population DoD by high-resolution quadrature of the quantile difference
    const double pop = gl_integrate_panels(
        [&](double t) {
            const double d = square.quantile(t) - disc.quantile(t);
            return d * d;
        },
        beta, 1.0 - beta, 512, 16);

    // empirical variance of sqrt(nm/(n+m)) (statistic - DoD) at n = m = 2000
    const std::size_t n = 2000, reps = 500;
    std::vector<double> scaled(reps);
    parallel_for(reps, [&](std::size_t rep) {
        const auto x =
            sample(SpaceSpec::unit_square(Metric::SupNorm), n, mix_seed(4242, 2 * rep));
        const auto y = sample(disc_spec, n, mix_seed(4242, 2 * rep + 1));
        const double stat = dod_statistic(x, y, beta, 2.0).statistic;
        scaled[rep] = std::sqrt(static_cast<double>(n) / 2.0) * (stat - pop);
    });
    const double empirical = oracle::variance(scaled);

    CHECK(predicted == doctest::Approx(empirical).epsilon(0.15));
}
