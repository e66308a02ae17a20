#include "dodtest/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dodtest/rng.hpp"
#include "dodtest/ustat.hpp"

namespace dod {

void BootstrapConfig::validate() const {
    if (n_B == 1) {
        throw std::invalid_argument("BootstrapConfig: resample size must be >= 2");
    }
    if (R < 1) {
        throw std::invalid_argument("BootstrapConfig: need at least one replication");
    }
    if (!(beta >= 0.0 && beta < 0.5)) {
        throw std::invalid_argument("BootstrapConfig: beta must lie in [0, 1/2)");
    }
    if (beta == 0.0 && !allow_untrimmed) {
        throw std::invalid_argument(
            "BootstrapConfig: beta = 0 has no consistency guarantee; "
            "set allow_untrimmed to run the untrimmed plug-in scheme");
    }
}

namespace {

// distances of an n_B-out-of-n resample, sorted
StepQuantile resample_quantile(const PointSample& x, std::size_t n_b, std::uint64_t seed) {
    Rng g(seed);
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n_b);
    for (auto& i : idx) {
        i = uniform_index(g, n);
    }
    std::vector<double> d;
    d.reserve(n_b * (n_b - 1) / 2);
    for (std::size_t i = 0; i + 1 < n_b; ++i) {
        for (std::size_t j = i + 1; j < n_b; ++j) {
            d.push_back(distance(x.points[idx[i]], x.points[idx[j]], x.metric));
        }
    }
    std::sort(d.begin(), d.end());
    return StepQuantile{std::move(d)};
}

double xi_star_impl(const StepQuantile& base, const PointSample& x, const BootstrapConfig& cfg,
                    std::size_t rep_index) {
    const std::size_t n_b = cfg.resample_size(x.size());
    const StepQuantile star = resample_quantile(x, n_b, mix_seed(cfg.seed, rep_index));
    return static_cast<double>(n_b) * kantorovich_1d(star, base, 2.0, cfg.beta);
}

}  // namespace

double xi_star(const PointSample& x, const BootstrapConfig& cfg, std::size_t rep_index) {
    cfg.validate();
    if (x.size() < 3) {
        throw std::invalid_argument("xi_star: need at least 3 points");
    }
    const StepQuantile base{pairwise(x).sorted};
    return xi_star_impl(base, x, cfg, rep_index);
}

double bootstrap_quantile(const PointSample& x, const BootstrapConfig& cfg, double alpha) {
    cfg.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("bootstrap_quantile: alpha must lie in (0,1)");
    }
    if (x.size() < 3) {
        throw std::invalid_argument("bootstrap_quantile: need at least 3 points");
    }
    const StepQuantile base{pairwise(x).sorted};
    std::vector<double> draws(cfg.R);
    for (std::size_t r = 0; r < cfg.R; ++r) {
        draws[r] = xi_star_impl(base, x, cfg, r);
    }
    std::sort(draws.begin(), draws.end());
    auto idx = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(cfg.R)));
    idx = std::clamp<std::size_t>(idx, 1, cfg.R);
    return draws[idx - 1];
}

TestOutcome dod_test_bootstrap(const PointSample& x, const PointSample& y,
                               const BootstrapConfig& cfg, double alpha,
                               CalibrationSample calibration_sample, double p) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("dod_test_bootstrap: alpha must lie in (0,1)");
    }
    const PointSample& cal = calibration_sample == CalibrationSample::FromX ? x : y;
    const double critical = bootstrap_quantile(cal, cfg, 1.0 - alpha);
    return dod_test(x, y, cfg.beta, alpha, critical, Calibration::Bootstrap, p);
}

}  // namespace dod
