#ifndef DODTEST_DOD_HPP
#define DODTEST_DOD_HPP

#include <cstddef>
#include <functional>

#include "dodtest/geometry.hpp"
#include "dodtest/ustat.hpp"

namespace dod {

// Trimmed distribution-of-distances statistic between two samples: the
// integral over [beta, 1-beta] of |Un^-1(t) - Vm^-1(t)|^p dt, where Un, Vm
// are the empirical cdfs of all pairwise distances. `scaled` carries the
// nm/(n+m) factor of the decision rule (point counts, not pair counts).
struct DoDResult {
    double statistic = 0.0;
    double scaled = 0.0;
    double beta = 0.0;
    double p = 2.0;
    std::size_t n = 0;
    std::size_t m = 0;
};

enum class Calibration { Bootstrap, LimitMC };

struct TestOutcome {
    double scaled_statistic = 0.0;
    double critical_value = 0.0;
    double alpha = 0.05;
    bool reject = false;
    Calibration calibration = Calibration::Bootstrap;
};

DoDResult dod_statistic(const PointSample& x, const PointSample& y,
                        double beta = 0.01, double p = 2.0);

// Decision rule: reject iff nm/(n+m) * statistic > critical.
TestOutcome dod_test(const PointSample& x, const PointSample& y, double beta,
                     double alpha, double critical, Calibration calibration,
                     double p = 2.0);

// Variant computed from the independent pair distances d(X1,X2), d(X3,X4),
// ... only (floor(n/2) values per sample); scaling uses the effective sizes.
DoDResult dod_independent(const PointSample& x, const PointSample& y,
                          double beta = 0.01, double p = 2.0);

// Asymptotic variance under a fixed alternative (distinct distance laws):
//   16 lambda  * I[quantU-range] (x - qV(U(x)))(y - qV(U(y))) GammaX(x,y)
// + 16 (1-lambda) * I[quantV-range] (qU(V(x)) - x)(qU(V(y)) - y) GammaY(x,y)
// evaluated by tensorized Gauss-Legendre quadrature with `nodes` points per
// axis. Returns 0 when the quantile functions agree on the trimmed range;
// that degenerate value is not a usable CLT scale.
double alternative_variance(const std::function<double(double)>& quant_u,
                            const std::function<double(double)>& cdf_u,
                            const std::function<double(double)>& quant_v,
                            const std::function<double(double)>& cdf_v,
                            const std::function<double(double, double)>& gamma_x,
                            const std::function<double(double, double)>& gamma_y,
                            double beta, double lambda, std::size_t nodes = 128);

}  // namespace dod

#endif
