#ifndef DODTEST_BENCH_HPP
#define DODTEST_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dodtest/bootstrap.hpp"
#include "dodtest/spaces.hpp"

namespace dod {

enum class Method { DoD, DoDIndependent, DTM };

// One power/level experiment: spaceB is tested against spaceA for each n,
// with the critical value calibrated once per n from spaceA.
struct ExperimentPlan {
    std::string name;
    SpaceSpec space_a;
    SpaceSpec space_b;
    std::vector<std::size_t> n_list;
    double beta = 0.01;
    double alpha = 0.05;
    double p = 2.0;
    std::size_t replications = 200;
    BootstrapConfig bootstrap;      // R / n_B / allow_untrimmed; seeds derived per run
    Method method = Method::DoD;
    std::uint64_t seed = 0;
    // DTM-specific knobs.
    double kappa = 0.1;
    std::size_t n_s_divisor = 15;   // n_S = max(1, n / divisor)

    void validate() const;
};

struct PowerRow {
    std::size_t n = 0;
    double rejection_rate = 0.0;
    std::size_t replications = 0;
    double mc_stderr = 0.0;  // sqrt(rate * (1-rate) / replications)
};

// Empirical rejection rate per sample size. For each n: calibrate the
// critical value once from a spaceA sample, then run `replications`
// independent tests on fresh (X, Y) pairs. Deterministic in plan.seed and
// independent of the degree of parallelism.
std::vector<PowerRow> run_power(const ExperimentPlan& plan);

// Scaled null statistics nm/(n+m) * DoD from independent same-space sample
// pairs, for comparison against the simulated limit law.
std::vector<double> run_null_distribution(const SpaceSpec& spec, std::size_t n, double beta,
                                          std::size_t replications, std::uint64_t seed,
                                          double p = 2.0);

// Protein comparison: per replication, subsample n C-alpha coordinates
// without replacement from each file and run the bootstrap DoD test with
// calibration from file A.
std::vector<PowerRow> compare_pdb(const std::string& path_a, const std::string& path_b,
                                  const std::vector<std::size_t>& n_list, double beta,
                                  double alpha, const BootstrapConfig& cfg,
                                  std::size_t replications, std::uint64_t seed);

}  // namespace dod

#endif
