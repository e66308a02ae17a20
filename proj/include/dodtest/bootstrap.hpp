#ifndef DODTEST_BOOTSTRAP_HPP
#define DODTEST_BOOTSTRAP_HPP

#include <cstdint>

#include "dodtest/dod.hpp"
#include "dodtest/geometry.hpp"

namespace dod {

// Which of the two samples calibrates the bootstrap critical value.
enum class CalibrationSample { FromX, FromY };

struct BootstrapConfig {
    // Resample size; 0 means "size of the sample" (the n-out-of-n plug-in
    // used throughout the experiments). The consistency theory assumes
    // sqrt(n_B) = o(n); set n_B = floor(pow(n, 0.9)) for the
    // theory-compliant choice.
    std::size_t n_B = 0;
    std::size_t R = 1000;     // bootstrap replications
    double beta = 0.01;
    std::uint64_t seed = 0;
    // Bootstrap consistency is established for beta in (0, 1/2) only.
    // beta = 0 is refused unless this flag is set; the untrimmed scheme is
    // the n-out-of-n plug-in used by the beta = 0 rows of the trimming
    // experiments, without a consistency guarantee.
    bool allow_untrimmed = false;

    void validate() const;  // throws std::invalid_argument
    std::size_t resample_size(std::size_t n) const { return n_B == 0 ? n : n_B; }
};

// One bootstrap realization
//   Xi* = n_B * integral over [beta,1-beta] of (U*^-1(t) - Un^-1(t))^2 dt
// where U* is the empirical distance cdf of an n_B-out-of-n resample of X
// (with replacement). Seeded by (cfg.seed, rep_index); replications are
// order-independent.
double xi_star(const PointSample& x, const BootstrapConfig& cfg, std::size_t rep_index);

// Empirical alpha-quantile (order statistic ceil(alpha * R)) of R
// independent Xi* realizations.
double bootstrap_quantile(const PointSample& x, const BootstrapConfig& cfg, double alpha);

// Bootstrapped DoD test: critical value from the designated calibration
// sample at level 1-alpha; reject iff nm/(n+m) * statistic > critical.
TestOutcome dod_test_bootstrap(const PointSample& x, const PointSample& y,
                               const BootstrapConfig& cfg, double alpha,
                               CalibrationSample calibration_sample = CalibrationSample::FromX,
                               double p = 2.0);

}  // namespace dod

#endif
