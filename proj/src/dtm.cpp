#include "dodtest/dtm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dodtest/rng.hpp"
#include "dodtest/ustat.hpp"

namespace dod {

namespace {

std::size_t neighbor_count(double kappa, std::size_t n) {
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw std::invalid_argument("dtm: kappa must lie in (0,1]");
    }
    const auto k = static_cast<long long>(std::llround(kappa * static_cast<double>(n)));
    if (k < 1) {
        throw std::invalid_argument("dtm: kappa * n rounds below one neighbor");
    }
    return std::min<std::size_t>(static_cast<std::size_t>(k), n);
}

// mean of the k smallest entries of d (d is consumed)
double mean_of_k_smallest(std::vector<double>& d, std::size_t k) {
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum += d[i];
    }
    return sum / static_cast<double>(k);
}

double dtm_at(const PointSample& sample, double kappa, const Point& x, long long exclude_index) {
    const std::size_t n = sample.size();
    const std::size_t effective_n = exclude_index >= 0 ? n - 1 : n;
    if (effective_n == 0) {
        throw std::invalid_argument("dtm: empty reference sample");
    }
    const std::size_t k = neighbor_count(kappa, effective_n);
    std::vector<double> d;
    d.reserve(effective_n);
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<long long>(i) == exclude_index) {
            continue;
        }
        d.push_back(distance(sample.points[i], x, sample.metric));
    }
    return mean_of_k_smallest(d, k);
}

std::vector<double> signature_at_indices(const PointSample& sample, double kappa,
                                         const std::vector<std::size_t>& indices,
                                         bool exclude_self) {
    std::vector<double> values;
    values.reserve(indices.size());
    for (std::size_t i : indices) {
        values.push_back(dtm_at(sample, kappa, sample.points[i],
                                exclude_self ? static_cast<long long>(i) : -1));
    }
    return values;
}

}  // namespace

double dtm_function(const PointSample& x_sample, double kappa, const Point& x,
                    bool exclude_self) {
    if (x_sample.points.empty()) {
        throw std::invalid_argument("dtm_function: empty sample");
    }
    long long exclude = -1;
    if (exclude_self) {
        // drop the first exact coordinate match, if any
        for (std::size_t i = 0; i < x_sample.size(); ++i) {
            const Point& p = x_sample.points[i];
            if (p.c == x.c) {
                exclude = static_cast<long long>(i);
                break;
            }
        }
    }
    return dtm_at(x_sample, kappa, x, exclude);
}

DTMSignature dtm_signature(const PointSample& x_sample, double kappa, std::size_t n_s,
                           bool exclude_self) {
    if (n_s < 1 || n_s > x_sample.size()) {
        throw std::invalid_argument("dtm_signature: need 1 <= n_S <= n");
    }
    std::vector<std::size_t> idx(n_s);
    for (std::size_t i = 0; i < n_s; ++i) {
        idx[i] = i;
    }
    DTMSignature sig;
    sig.kappa = kappa;
    sig.values = signature_at_indices(x_sample, kappa, idx, exclude_self);
    return sig;
}

double dtm_statistic(const PointSample& x_sample, const PointSample& y_sample, double kappa,
                     std::size_t n_s) {
    DTMSignature a = dtm_signature(x_sample, kappa, n_s);
    DTMSignature b = dtm_signature(y_sample, kappa, n_s);
    std::sort(a.values.begin(), a.values.end());
    std::sort(b.values.begin(), b.values.end());
    return kantorovich_1d(StepQuantile{std::move(a.values)}, StepQuantile{std::move(b.values)},
                          1.0, 0.0);
}

TestOutcome dtm_test(const PointSample& x_sample, const PointSample& y_sample, double kappa,
                     std::size_t n_s, double alpha, std::size_t r, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("dtm_test: alpha must lie in (0,1)");
    }
    if (r < 20) {
        throw std::invalid_argument("dtm_test: need R >= 20 calibration replications");
    }

    // delta is deterministic given the calibration sample; evaluate once for
    // every point, then each replication just picks two index subsets
    const std::size_t n = x_sample.size();
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) {
        all[i] = i;
    }
    const std::vector<double> delta = signature_at_indices(x_sample, kappa, all, false);

    std::vector<double> draws(r);
    for (std::size_t rep = 0; rep < r; ++rep) {
        Rng g(mix_seed(seed, rep));
        const auto ia = sample_without_replacement(g, n, n_s);
        const auto ib = sample_without_replacement(g, n, n_s);
        std::vector<double> a(n_s), b(n_s);
        for (std::size_t i = 0; i < n_s; ++i) {
            a[i] = delta[ia[i]];
            b[i] = delta[ib[i]];
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        draws[rep] = kantorovich_1d(StepQuantile{std::move(a)}, StepQuantile{std::move(b)},
                                    1.0, 0.0);
    }
    std::sort(draws.begin(), draws.end());
    auto idx = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(r)));
    idx = std::clamp<std::size_t>(idx, 1, r);
    const double critical = draws[idx - 1];

    TestOutcome out;
    out.scaled_statistic = dtm_statistic(x_sample, y_sample, kappa, n_s);
    out.critical_value = critical;
    out.alpha = alpha;
    out.reject = out.scaled_statistic > critical;
    out.calibration = Calibration::Bootstrap;
    return out;
}

}  // namespace dod
