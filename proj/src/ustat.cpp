#include "dodtest/ustat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dod {

DistanceSample pairwise(const PointSample& sample) {
    const std::size_t n = sample.points.size();
    if (n < 2) {
        throw std::invalid_argument("pairwise: need at least 2 points");
    }
    DistanceSample d;
    d.n_points = n;
    d.sorted.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d.sorted.push_back(distance(sample.points[i], sample.points[j], sample.metric));
        }
    }
    std::sort(d.sorted.begin(), d.sorted.end());
    return d;
}

double u_cdf(const DistanceSample& d, double t) {
    const auto it = std::upper_bound(d.sorted.begin(), d.sorted.end(), t);
    return static_cast<double>(it - d.sorted.begin()) / static_cast<double>(d.sorted.size());
}

namespace {

// index of the order statistic at level t in (0,1]: ceil(t*N), 1-based
std::size_t quantile_index(double t, std::size_t n) {
    if (!(t > 0.0) || t > 1.0) {
        throw std::domain_error("quantile level must lie in (0,1]");
    }
    auto idx = static_cast<std::size_t>(std::ceil(t * static_cast<double>(n)));
    if (idx < 1) idx = 1;
    if (idx > n) idx = n;
    return idx;
}

}  // namespace

double u_quantile(const DistanceSample& d, double t) {
    return d.sorted[quantile_index(t, d.sorted.size()) - 1];
}

double StepQuantile::operator()(double t) const {
    return values[quantile_index(t, values.size()) - 1];
}

PairPartition partition_pairs(int n) {
    if (n < 3) {
        throw std::invalid_argument("partition_pairs: need n >= 3");
    }
    // Round-robin tournament: players 0..m-2 rotate on a circle, player m-1
    // is fixed. Odd n runs the schedule on m = n+1 players with a phantom
    // whose pairs are dropped.
    const bool odd = (n % 2) != 0;
    const int m = odd ? n + 1 : n;
    const int rounds = m - 1;
    const int phantom = odd ? m - 1 : -1;

    PairPartition part;
    part.groups.resize(rounds);
    for (int r = 0; r < rounds; ++r) {
        auto& group = part.groups[r];
        group.reserve(m / 2);
        for (int k = 0; k < m / 2; ++k) {
            int a, b;
            if (k == 0) {
                a = m - 1;
                b = r;
            } else {
                a = (r + k) % (m - 1);
                b = (r - k + (m - 1)) % (m - 1);
            }
            if (a == phantom || b == phantom) {
                continue;
            }
            // report 1-based (i,j) with i < j
            int i = std::min(a, b) + 1;
            int j = std::max(a, b) + 1;
            group.emplace_back(i, j);
        }
    }
    return part;
}

namespace {

inline double pow_abs(double x, double p) {
    const double a = std::fabs(x);
    if (p == 2.0) return a * a;
    if (p == 1.0) return a;
    return std::pow(a, p);
}

}  // namespace

double kantorovich_1d(const StepQuantile& a, const StepQuantile& b, double p, double beta) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("kantorovich_1d: order p must be >= 1");
    }
    if (!(beta >= 0.0 && beta < 0.5)) {
        throw std::invalid_argument("kantorovich_1d: trimming level must lie in [0, 1/2)");
    }
    if (a.values.empty() || b.values.empty()) {
        throw std::invalid_argument("kantorovich_1d: empty quantile function");
    }

    const auto na = static_cast<long long>(a.values.size());
    const auto nb = static_cast<long long>(b.values.size());
    const double lo = beta;
    const double hi = 1.0 - beta;

    // first cells with mass above the lower trim bound
    long long ia = static_cast<long long>(std::floor(lo * static_cast<double>(na))) + 1;
    long long ib = static_cast<long long>(std::floor(lo * static_cast<double>(nb))) + 1;
    ia = std::clamp(ia, 1ll, na);
    ib = std::clamp(ib, 1ll, nb);

    double total = 0.0;
    double t = lo;
    while (t < hi) {
        const double va = a.values[static_cast<std::size_t>(ia - 1)];
        const double vb = b.values[static_cast<std::size_t>(ib - 1)];

        // next breakpoint: exact rational comparison of ia/na vs ib/nb
        const auto ca = static_cast<__int128>(ia) * nb;
        const auto cb = static_cast<__int128>(ib) * na;
        const bool adv_a = ca <= cb;
        const bool adv_b = cb <= ca;
        const double bound = adv_a ? static_cast<double>(ia) / static_cast<double>(na)
                                   : static_cast<double>(ib) / static_cast<double>(nb);

        const double next = std::min(bound, hi);
        if (next > t) {
            total += (next - t) * pow_abs(va - vb, p);
        }
        t = next;
        if (bound > hi) {
            break;
        }
        if (adv_a) ++ia;
        if (adv_b) ++ib;
        if (ia > na || ib > nb) {
            break;  // last cells reach 1 >= hi
        }
    }
    return total;
}

}  // namespace dod
