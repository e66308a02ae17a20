#ifndef DODTEST_DTM_HPP
#define DODTEST_DTM_HPP

#include <cstdint>

#include "dodtest/dod.hpp"
#include "dodtest/geometry.hpp"

namespace dod {

// Empirical distance-to-measure signature: delta evaluated at the first n_S
// sample points, a uniform discrete law on R.
struct DTMSignature {
    std::vector<double> values;  // delta at the evaluation points, >= 0
    double kappa = 0.1;

    std::size_t n_s() const { return values.size(); }
};

// Empirical distance-to-measure function with mass parameter kappa = k/n:
// the mean distance from x to its k = round(kappa * n) nearest neighbors in
// the sample. A sample point is its own zero-distance neighbor; set
// exclude_self to drop one exact-zero distance instead (documented variant,
// off by default). Throws std::invalid_argument when round(kappa * n) < 1.
double dtm_function(const PointSample& x_sample, double kappa, const Point& x,
                    bool exclude_self = false);

DTMSignature dtm_signature(const PointSample& x_sample, double kappa, std::size_t n_s,
                           bool exclude_self = false);

// 1-Kantorovich distance between the two signatures (sorted coupling).
double dtm_statistic(const PointSample& x_sample, const PointSample& y_sample,
                     double kappa, std::size_t n_s);

// Bootstrap-calibrated comparison: the critical value is the empirical
// (1-alpha)-quantile of R replications of the signature distance between two
// independent n_S-subsamples (without replacement) of the calibration sample
// x_sample, with delta taken w.r.t. the full sample. This approximates the
// reference test's calibration; it is not a proof-level reproduction.
TestOutcome dtm_test(const PointSample& x_sample, const PointSample& y_sample,
                     double kappa, std::size_t n_s, double alpha, std::size_t r,
                     std::uint64_t seed);

}  // namespace dod

#endif
