#include "dodtest/bench.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dodtest/dtm.hpp"
#include "dodtest/parallel.hpp"
#include "dodtest/rng.hpp"
#include "dodtest/ustat.hpp"

namespace dod {

namespace {

// disjoint seed-stream ranges per role; replication indices stay below 2^32,
// so calibration, bootstrap, X draws and Y draws never collide
constexpr std::uint64_t kXStream = 0x100000000ull;
constexpr std::uint64_t kYStream = 0x200000000ull;
constexpr std::uint64_t kCalStream = 0x300000000ull;
constexpr std::uint64_t kBootStream = 0x400000000ull;

PowerRow make_row(std::size_t n, std::size_t rejections, std::size_t replications) {
    PowerRow row;
    row.n = n;
    row.replications = replications;
    row.rejection_rate = static_cast<double>(rejections) / static_cast<double>(replications);
    row.mc_stderr = std::sqrt(row.rejection_rate * (1.0 - row.rejection_rate) /
                              static_cast<double>(replications));
    return row;
}

std::size_t count_rejections(std::size_t replications,
                             const std::function<bool(std::size_t)>& one_test) {
    std::vector<char> rejected(replications, 0);
    parallel_for(replications, [&](std::size_t rep) { rejected[rep] = one_test(rep) ? 1 : 0; });
    return static_cast<std::size_t>(std::count(rejected.begin(), rejected.end(), 1));
}

// Classical n-out-of-n bootstrap critical value for the independent-distances
// statistic: the calibration sample contributes floor(n/2) i.i.d. distances;
// each replication resamples them with replacement and integrates the squared
// trimmed quantile difference, scaled by the resample size.
double independent_bootstrap_critical(const PointSample& cal, const BootstrapConfig& cfg,
                                      double alpha) {
    std::vector<double> base;
    base.reserve(cal.size() / 2);
    for (std::size_t i = 0; i + 1 < cal.size(); i += 2) {
        base.push_back(distance(cal.points[i], cal.points[i + 1], cal.metric));
    }
    std::sort(base.begin(), base.end());
    const StepQuantile base_q{base};
    const std::size_t n_eff = base.size();

    std::vector<double> draws(cfg.R);
    for (std::size_t r = 0; r < cfg.R; ++r) {
        Rng g(mix_seed(cfg.seed, r));
        std::vector<double> res(n_eff);
        for (auto& value : res) {
            value = base[uniform_index(g, n_eff)];
        }
        std::sort(res.begin(), res.end());
        draws[r] = static_cast<double>(n_eff) *
                   kantorovich_1d(StepQuantile{std::move(res)}, base_q, 2.0, cfg.beta);
    }
    std::sort(draws.begin(), draws.end());
    auto idx = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(cfg.R)));
    idx = std::clamp<std::size_t>(idx, 1, cfg.R);
    return draws[idx - 1];
}

}  // namespace

void ExperimentPlan::validate() const {
    space_a.validate();
    space_b.validate();
    if (n_list.empty()) {
        throw std::invalid_argument("ExperimentPlan: n_list must be nonempty");
    }
    if (replications < 1) {
        throw std::invalid_argument("ExperimentPlan: need at least one replication");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("ExperimentPlan: alpha must lie in (0,1)");
    }
    if (!(beta >= 0.0 && beta < 0.5)) {
        throw std::invalid_argument("ExperimentPlan: beta must lie in [0, 1/2)");
    }
}

std::vector<PowerRow> run_power(const ExperimentPlan& plan) {
    plan.validate();
    std::vector<PowerRow> rows;
    rows.reserve(plan.n_list.size());

    for (const std::size_t n : plan.n_list) {
        const std::uint64_t base = mix_seed(plan.seed, n);
        BootstrapConfig cfg = plan.bootstrap;
        cfg.beta = plan.beta;
        cfg.seed = mix_seed(base, kBootStream);
        if (plan.beta == 0.0) {
            cfg.allow_untrimmed = true;  // untrimmed rows of the trimming study
        }

        const PointSample cal = sample(plan.space_a, n, mix_seed(base, kCalStream));
        const auto draw_pair = [&](std::size_t rep) {
            return std::pair<PointSample, PointSample>(
                sample(plan.space_a, n, mix_seed(base, kXStream + rep)),
                sample(plan.space_b, n, mix_seed(base, kYStream + rep)));
        };

        std::size_t rejections = 0;
        switch (plan.method) {
            case Method::DoD: {
                cfg.validate();
                const double critical = bootstrap_quantile(cal, cfg, 1.0 - plan.alpha);
                rejections = count_rejections(plan.replications, [&](std::size_t rep) {
                    const auto [x, y] = draw_pair(rep);
                    return dod_statistic(x, y, plan.beta, plan.p).scaled > critical;
                });
                break;
            }
            case Method::DoDIndependent: {
                cfg.validate();
                const double critical = independent_bootstrap_critical(cal, cfg, plan.alpha);
                rejections = count_rejections(plan.replications, [&](std::size_t rep) {
                    const auto [x, y] = draw_pair(rep);
                    return dod_independent(x, y, plan.beta, plan.p).scaled > critical;
                });
                break;
            }
            case Method::DTM: {
                const std::size_t n_s = std::max<std::size_t>(1, n / plan.n_s_divisor);
                // critical value from the calibration sample, once per n
                const TestOutcome cal_outcome =
                    dtm_test(cal, cal, plan.kappa, n_s, plan.alpha, cfg.R, cfg.seed);
                const double critical = cal_outcome.critical_value;
                rejections = count_rejections(plan.replications, [&](std::size_t rep) {
                    const auto [x, y] = draw_pair(rep);
                    return dtm_statistic(x, y, plan.kappa, n_s) > critical;
                });
                break;
            }
        }
        rows.push_back(make_row(n, rejections, plan.replications));
    }
    return rows;
}

std::vector<double> run_null_distribution(const SpaceSpec& spec, std::size_t n, double beta,
                                          std::size_t replications, std::uint64_t seed,
                                          double p) {
    spec.validate();
    if (replications < 1) {
        throw std::invalid_argument("run_null_distribution: need at least one replication");
    }
    std::vector<double> stats(replications);
    parallel_for(replications, [&](std::size_t rep) {
        const PointSample x = sample(spec, n, mix_seed(seed, kXStream + rep));
        const PointSample y = sample(spec, n, mix_seed(seed, kYStream + rep));
        stats[rep] = dod_statistic(x, y, beta, p).scaled;
    });
    return stats;
}

std::vector<PowerRow> compare_pdb(const std::string& path_a, const std::string& path_b,
                                  const std::vector<std::size_t>& n_list, double beta,
                                  double alpha, const BootstrapConfig& cfg,
                                  std::size_t replications, std::uint64_t seed) {
    const PointSample atoms_a = load_calpha(path_a);
    const PointSample atoms_b = load_calpha(path_b);

    std::vector<PowerRow> rows;
    rows.reserve(n_list.size());
    for (const std::size_t n : n_list) {
        if (n > atoms_a.size() || n > atoms_b.size()) {
            throw std::invalid_argument("compare_pdb: fewer CA atoms than requested sample size");
        }
        const std::uint64_t base = mix_seed(seed, n);
        const std::size_t rejections = count_rejections(replications, [&](std::size_t rep) {
            BootstrapConfig rep_cfg = cfg;
            rep_cfg.beta = beta;
            rep_cfg.seed = mix_seed(base, kBootStream + rep);
            const PointSample x = subsample_points(atoms_a, n, mix_seed(base, kXStream + rep));
            const PointSample y = subsample_points(atoms_b, n, mix_seed(base, kYStream + rep));
            return dod_test_bootstrap(x, y, rep_cfg, alpha, CalibrationSample::FromX).reject;
        });
        rows.push_back(make_row(n, rejections, replications));
    }
    return rows;
}

}  // namespace dod
