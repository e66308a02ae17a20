#include "dodtest/dod.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dodtest/quadrature.hpp"

namespace dod {

namespace {

double scale_factor(std::size_t n, std::size_t m) {
    return static_cast<double>(n) * static_cast<double>(m) /
           static_cast<double>(n + m);
}

void check_trim_and_order(double beta, double p) {
    if (!(beta >= 0.0 && beta < 0.5)) {
        throw std::invalid_argument("trimming level must lie in [0, 1/2)");
    }
    if (!(p >= 1.0)) {
        throw std::invalid_argument("order p must be >= 1");
    }
}

}  // namespace

DoDResult dod_statistic(const PointSample& x, const PointSample& y, double beta, double p) {
    check_trim_and_order(beta, p);
    if (x.size() < 2 || y.size() < 2) {
        throw std::invalid_argument("dod_statistic: need at least 2 points per sample");
    }
    const DistanceSample dx = pairwise(x);
    const DistanceSample dy = pairwise(y);

    DoDResult r;
    r.statistic = kantorovich_1d(StepQuantile{dx.sorted}, StepQuantile{dy.sorted}, p, beta);
    r.beta = beta;
    r.p = p;
    r.n = x.size();
    r.m = y.size();
    r.scaled = scale_factor(r.n, r.m) * r.statistic;
    return r;
}

TestOutcome dod_test(const PointSample& x, const PointSample& y, double beta, double alpha,
                     double critical, Calibration calibration, double p) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("dod_test: alpha must lie in (0,1)");
    }
    if (!(critical >= 0.0)) {
        throw std::invalid_argument("dod_test: critical value must be >= 0");
    }
    const DoDResult r = dod_statistic(x, y, beta, p);
    TestOutcome out;
    out.scaled_statistic = r.scaled;
    out.critical_value = critical;
    out.alpha = alpha;
    out.reject = r.scaled > critical;
    out.calibration = calibration;
    return out;
}

DoDResult dod_independent(const PointSample& x, const PointSample& y, double beta, double p) {
    check_trim_and_order(beta, p);
    if (x.size() < 2 || y.size() < 2) {
        throw std::invalid_argument("dod_independent: need at least 2 points per sample");
    }

    const auto paired_distances = [](const PointSample& s) {
        std::vector<double> d;
        d.reserve(s.size() / 2);
        for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
            d.push_back(distance(s.points[i], s.points[i + 1], s.metric));
        }
        std::sort(d.begin(), d.end());
        return d;
    };

    StepQuantile qx{paired_distances(x)};
    StepQuantile qy{paired_distances(y)};

    DoDResult r;
    r.statistic = kantorovich_1d(qx, qy, p, beta);
    r.beta = beta;
    r.p = p;
    r.n = x.size() / 2;  // effective sizes: one distance per point pair
    r.m = y.size() / 2;
    r.scaled = scale_factor(r.n, r.m) * r.statistic;
    return r;
}

double alternative_variance(const std::function<double(double)>& quant_u,
                            const std::function<double(double)>& cdf_u,
                            const std::function<double(double)>& quant_v,
                            const std::function<double(double)>& cdf_v,
                            const std::function<double(double, double)>& gamma_x,
                            const std::function<double(double, double)>& gamma_y,
                            double beta, double lambda, std::size_t nodes) {
    if (!(beta > 0.0 && beta < 0.5)) {
        throw std::invalid_argument("alternative_variance: beta must lie in (0, 1/2)");
    }
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("alternative_variance: lambda must lie in (0,1)");
    }

    const auto& rule = gauss_legendre(nodes);

    // one tensorized double integral of w(x) w(y) K(x,y) over [a,b]^2
    const auto term = [&rule](const std::function<double(double)>& weight,
                              const std::function<double(double, double)>& kernel, double a,
                              double b) {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const std::size_t k = rule.nodes.size();
        std::vector<double> xs(k), ws(k);
        for (std::size_t i = 0; i < k; ++i) {
            xs[i] = mid + half * rule.nodes[i];
            ws[i] = half * rule.weights[i] * weight(xs[i]);
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                const double val = kernel(xs[i], xs[j]);
                if (!std::isfinite(val)) {
                    throw std::runtime_error("alternative_variance: non-finite kernel value");
                }
                sum += ws[i] * ws[j] * val;
            }
        }
        return sum;
    };

    const auto weight_x = [&](double x) { return x - quant_v(cdf_u(x)); };
    const auto weight_y = [&](double x) { return quant_u(cdf_v(x)) - x; };

    const double ix = term(weight_x, gamma_x, quant_u(beta), quant_u(1.0 - beta));
    const double iy = term(weight_y, gamma_y, quant_v(beta), quant_v(1.0 - beta));
    return 16.0 * lambda * ix + 16.0 * (1.0 - lambda) * iy;
}

}  // namespace dod
