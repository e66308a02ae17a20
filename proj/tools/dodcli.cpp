// Command-line front end: sampling, the DoD statistic and test, power
// studies, null-distribution and limit-law draws, the DTM baseline, and
// protein file comparisons. All commands take explicit seeds; reruns are
// bit-reproducible.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dodtest/analytic.hpp"
#include "dodtest/bench.hpp"
#include "dodtest/bootstrap.hpp"
#include "dodtest/dtm.hpp"
#include "dodtest/limit.hpp"
#include "dodtest/serialize.hpp"
#include "dodtest/spaces.hpp"
#include "dodtest/ustat.hpp"

namespace {

using dod::SpaceSpec;
using nlohmann::json;

struct OutputTarget {
    std::string path;    // empty = stdout
    std::string format = "json";

    std::ostream& open(std::ofstream& file) const {
        if (path.empty()) {
            return std::cout;
        }
        file.open(path);
        if (!file) {
            throw std::runtime_error("cannot open output file: " + path);
        }
        return file;
    }
};

SpaceSpec parse_space(const std::string& text) {
    return dod::space_spec_from_json(json::parse(text));
}

void add_output_flags(CLI::App* cmd, OutputTarget& out) {
    cmd->add_option("--out", out.path, "output file (default: stdout)");
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

void emit(const OutputTarget& out, const json& as_json,
          const std::function<void(std::ostream&)>& as_csv) {
    std::ofstream file;
    std::ostream& os = out.open(file);
    if (out.format == "csv") {
        as_csv(os);
    } else {
        os << as_json.dump(2) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distribution-of-distances two-sample testing"};
    app.require_subcommand(1);

    // --- sample ---------------------------------------------------------
    std::string sample_space;
    std::size_t sample_n = 100;
    std::uint64_t sample_seed = 1;
    bool sample_pairwise = false;
    OutputTarget sample_out;
    auto* cmd_sample = app.add_subcommand("sample", "draw points from a space");
    cmd_sample->add_option("--space", sample_space, "space spec as JSON")->required();
    cmd_sample->add_option("--n", sample_n, "number of points")->required();
    cmd_sample->add_option("--seed", sample_seed, "random seed");
    cmd_sample->add_flag("--pairwise", sample_pairwise,
                         "emit the sorted pairwise distances instead of the points");
    add_output_flags(cmd_sample, sample_out);

    // --- dod --------------------------------------------------------------
    std::string dod_space_a, dod_space_b;
    std::size_t dod_n = 100, dod_m = 0;
    double dod_beta = 0.01, dod_p = 2.0;
    std::uint64_t dod_seed = 1;
    OutputTarget dod_out;
    auto* cmd_dod = app.add_subcommand("dod", "compute the DoD statistic for two fresh samples");
    cmd_dod->add_option("--space-a", dod_space_a, "first space spec (JSON)")->required();
    cmd_dod->add_option("--space-b", dod_space_b, "second space spec (JSON)")->required();
    cmd_dod->add_option("--n", dod_n, "sample size for both spaces")->required();
    cmd_dod->add_option("--m", dod_m, "second sample size (default: n)");
    cmd_dod->add_option("--beta", dod_beta, "trimming level");
    cmd_dod->add_option("--p", dod_p, "order of the distance");
    cmd_dod->add_option("--seed", dod_seed, "random seed");
    add_output_flags(cmd_dod, dod_out);

    // --- test ---------------------------------------------------------
    std::string test_space_a, test_space_b;
    std::size_t test_n = 100, test_nb = 0, test_r = 1000;
    double test_beta = 0.01, test_alpha = 0.05, test_p = 2.0;
    std::uint64_t test_seed = 1;
    bool test_cal_from_b = false;
    OutputTarget test_out;
    auto* cmd_test = app.add_subcommand("test", "bootstrapped DoD test on two fresh samples");
    cmd_test->add_option("--space-a", test_space_a, "first space spec (JSON)")->required();
    cmd_test->add_option("--space-b", test_space_b, "second space spec (JSON)")->required();
    cmd_test->add_option("--n", test_n, "sample size")->required();
    cmd_test->add_option("--beta", test_beta, "trimming level");
    cmd_test->add_option("--alpha", test_alpha, "significance level");
    cmd_test->add_option("--p", test_p, "order of the distance");
    cmd_test->add_option("--n-b", test_nb, "bootstrap resample size (default: n)");
    cmd_test->add_option("--bootstrap-reps", test_r, "bootstrap replications R");
    cmd_test->add_option("--seed", test_seed, "random seed");
    cmd_test->add_flag("--calibrate-from-b", test_cal_from_b,
                       "calibrate the critical value from the second sample");
    add_output_flags(cmd_test, test_out);

    // --- power ------------------------------------------------------------
    dod::ExperimentPlan plan;
    std::string power_space_a, power_space_b, power_method = "dod";
    std::vector<std::size_t> power_ns;
    std::size_t power_nb = 0, power_r = 1000;
    OutputTarget power_out;
    auto* cmd_power = app.add_subcommand("power", "empirical rejection rates per sample size");
    cmd_power->add_option("--space-a", power_space_a, "calibration space spec (JSON)")->required();
    cmd_power->add_option("--space-b", power_space_b, "alternative space spec (JSON)")->required();
    cmd_power->add_option("--n", power_ns, "sample sizes (repeatable)")->required();
    cmd_power->add_option("--beta", plan.beta, "trimming level");
    cmd_power->add_option("--alpha", plan.alpha, "significance level");
    cmd_power->add_option("--p", plan.p, "order of the distance");
    cmd_power->add_option("--reps", plan.replications, "test replications per n");
    cmd_power->add_option("--bootstrap-reps", power_r, "bootstrap replications R");
    cmd_power->add_option("--n-b", power_nb, "bootstrap resample size (default: n)");
    cmd_power->add_option("--method", power_method, "test statistic")
        ->check(CLI::IsMember({"dod", "dod-ind", "dtm"}));
    cmd_power->add_option("--kappa", plan.kappa, "DTM mass parameter");
    cmd_power->add_option("--ns-divisor", plan.n_s_divisor, "DTM signature size divisor");
    cmd_power->add_option("--seed", plan.seed, "random seed");
    add_output_flags(cmd_power, power_out);

    // --- null-dist ----------------------------------------------------
    std::string null_space;
    std::size_t null_n = 250, null_reps = 2000;
    double null_beta = 0.01, null_p = 2.0;
    std::uint64_t null_seed = 1;
    OutputTarget null_out;
    null_out.format = "csv";
    auto* cmd_null = app.add_subcommand("null-dist",
                                        "scaled null statistics from same-space sample pairs");
    cmd_null->add_option("--space", null_space, "space spec (JSON)")->required();
    cmd_null->add_option("--n", null_n, "sample size")->required();
    cmd_null->add_option("--beta", null_beta, "trimming level");
    cmd_null->add_option("--p", null_p, "order of the distance");
    cmd_null->add_option("--reps", null_reps, "replications");
    cmd_null->add_option("--seed", null_seed, "random seed");
    add_output_flags(cmd_null, null_out);

    // --- limit-sample -------------------------------------------------
    std::size_t limit_k = 512, limit_draws = 10000;
    double limit_beta = 0.01;
    std::uint64_t limit_seed = 1;
    OutputTarget limit_out;
    limit_out.format = "csv";
    auto* cmd_limit = app.add_subcommand(
        "limit-sample", "draws from the simulated null limit law of the unit square (sup-norm)");
    cmd_limit->add_option("--beta", limit_beta, "trimming level");
    cmd_limit->add_option("--k", limit_k, "grid resolution");
    cmd_limit->add_option("--draws", limit_draws, "number of draws");
    cmd_limit->add_option("--seed", limit_seed, "random seed");
    add_output_flags(cmd_limit, limit_out);

    // --- dtm-test -------------------------------------------------------
    std::string dtm_space_a, dtm_space_b;
    std::size_t dtm_n = 500, dtm_ns = 0, dtm_r = 1000;
    double dtm_kappa = 0.1, dtm_alpha = 0.05;
    std::uint64_t dtm_seed = 1;
    OutputTarget dtm_out;
    auto* cmd_dtm = app.add_subcommand("dtm-test", "distance-to-measure baseline test");
    cmd_dtm->add_option("--space-a", dtm_space_a, "first space spec (JSON)")->required();
    cmd_dtm->add_option("--space-b", dtm_space_b, "second space spec (JSON)")->required();
    cmd_dtm->add_option("--n", dtm_n, "sample size")->required();
    cmd_dtm->add_option("--kappa", dtm_kappa, "mass parameter");
    cmd_dtm->add_option("--n-s", dtm_ns, "signature size (default: n/15)");
    cmd_dtm->add_option("--alpha", dtm_alpha, "significance level");
    cmd_dtm->add_option("--reps", dtm_r, "calibration replications R");
    cmd_dtm->add_option("--seed", dtm_seed, "random seed");
    add_output_flags(cmd_dtm, dtm_out);

    // --- pdb-compare ------------------------------------------------------
    std::string pdb_a, pdb_b;
    std::vector<std::size_t> pdb_ns;
    std::size_t pdb_nb = 0, pdb_r = 1000, pdb_reps = 200;
    double pdb_beta = 0.01, pdb_alpha = 0.05;
    std::uint64_t pdb_seed = 1;
    OutputTarget pdb_out;
    auto* cmd_pdb = app.add_subcommand("pdb-compare",
                                       "bootstrap DoD test on CA subsamples of two PDB files");
    cmd_pdb->add_option("--file-a", pdb_a, "first PDB file")->required();
    cmd_pdb->add_option("--file-b", pdb_b, "second PDB file")->required();
    cmd_pdb->add_option("--n", pdb_ns, "subsample sizes (repeatable)")->required();
    cmd_pdb->add_option("--beta", pdb_beta, "trimming level");
    cmd_pdb->add_option("--alpha", pdb_alpha, "significance level");
    cmd_pdb->add_option("--n-b", pdb_nb, "bootstrap resample size (default: n)");
    cmd_pdb->add_option("--bootstrap-reps", pdb_r, "bootstrap replications R");
    cmd_pdb->add_option("--reps", pdb_reps, "test replications per n");
    cmd_pdb->add_option("--seed", pdb_seed, "random seed");
    add_output_flags(cmd_pdb, pdb_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_sample) {
            const auto spec = parse_space(sample_space);
            const auto pts = dod::sample(spec, sample_n, sample_seed);
            if (sample_pairwise) {
                const auto d = dod::pairwise(pts);
                emit(sample_out, json(d.sorted), [&](std::ostream& os) {
                    dod::write_column_csv(os, "distance", d.sorted);
                });
            } else {
                json arr = json::array();
                for (const auto& pt : pts.points) {
                    arr.push_back(pt.dim == 3 ? json::array({pt.x(), pt.y(), pt.z()})
                                              : json::array({pt.x(), pt.y()}));
                }
                emit(sample_out, arr,
                     [&](std::ostream& os) { dod::write_points_csv(os, pts); });
            }
        } else if (*cmd_dod) {
            const auto spec_a = parse_space(dod_space_a);
            const auto spec_b = parse_space(dod_space_b);
            const auto x = dod::sample(spec_a, dod_n, dod::mix_seed(dod_seed, 1));
            const auto y = dod::sample(spec_b, dod_m == 0 ? dod_n : dod_m,
                                       dod::mix_seed(dod_seed, 2));
            const auto result = dod::dod_statistic(x, y, dod_beta, dod_p);
            emit(dod_out, dod::to_json(result), [&](std::ostream& os) {
                os << "statistic,scaled,beta,p,n,m\n"
                   << result.statistic << ',' << result.scaled << ',' << result.beta << ','
                   << result.p << ',' << result.n << ',' << result.m << '\n';
            });
        } else if (*cmd_test) {
            const auto spec_a = parse_space(test_space_a);
            const auto spec_b = parse_space(test_space_b);
            const auto x = dod::sample(spec_a, test_n, dod::mix_seed(test_seed, 1));
            const auto y = dod::sample(spec_b, test_n, dod::mix_seed(test_seed, 2));
            dod::BootstrapConfig cfg;
            cfg.n_B = test_nb;
            cfg.R = test_r;
            cfg.beta = test_beta;
            cfg.seed = dod::mix_seed(test_seed, 3);
            const auto outcome = dod::dod_test_bootstrap(
                x, y, cfg, test_alpha,
                test_cal_from_b ? dod::CalibrationSample::FromY : dod::CalibrationSample::FromX,
                test_p);
            emit(test_out, dod::to_json(outcome), [&](std::ostream& os) {
                os << "scaled_statistic,critical_value,alpha,reject\n"
                   << outcome.scaled_statistic << ',' << outcome.critical_value << ','
                   << outcome.alpha << ',' << (outcome.reject ? 1 : 0) << '\n';
            });
        } else if (*cmd_power) {
            plan.space_a = parse_space(power_space_a);
            plan.space_b = parse_space(power_space_b);
            plan.n_list = power_ns;
            plan.method = dod::method_from_name(power_method);
            plan.bootstrap.R = power_r;
            plan.bootstrap.n_B = power_nb;
            const auto rows = dod::run_power(plan);
            emit(power_out, dod::to_json(rows),
                 [&](std::ostream& os) { dod::write_power_csv(os, rows); });
        } else if (*cmd_null) {
            const auto spec = parse_space(null_space);
            const auto stats =
                dod::run_null_distribution(spec, null_n, null_beta, null_reps, null_seed, null_p);
            emit(null_out, json(stats), [&](std::ostream& os) {
                dod::write_column_csv(os, "scaled_statistic", stats);
            });
        } else if (*cmd_limit) {
            const auto law = dod::square_supnorm_law();
            const auto kernel = [&law](double s, double t) {
                return dod::gamma1_square(s, t) - law.cdf(s) * law.cdf(t);
            };
            const auto grid = dod::build_limit_grid(law, kernel, limit_beta, limit_k);
            const auto draws = dod::sample_xi(grid, limit_draws, limit_seed);
            emit(limit_out, json(draws),
                 [&](std::ostream& os) { dod::write_column_csv(os, "xi", draws); });
        } else if (*cmd_dtm) {
            const auto spec_a = parse_space(dtm_space_a);
            const auto spec_b = parse_space(dtm_space_b);
            const auto x = dod::sample(spec_a, dtm_n, dod::mix_seed(dtm_seed, 1));
            const auto y = dod::sample(spec_b, dtm_n, dod::mix_seed(dtm_seed, 2));
            const std::size_t n_s = dtm_ns == 0 ? std::max<std::size_t>(1, dtm_n / 15) : dtm_ns;
            const auto outcome = dod::dtm_test(x, y, dtm_kappa, n_s, dtm_alpha, dtm_r,
                                               dod::mix_seed(dtm_seed, 3));
            emit(dtm_out, dod::to_json(outcome), [&](std::ostream& os) {
                os << "statistic,critical_value,alpha,reject\n"
                   << outcome.scaled_statistic << ',' << outcome.critical_value << ','
                   << outcome.alpha << ',' << (outcome.reject ? 1 : 0) << '\n';
            });
        } else if (*cmd_pdb) {
            dod::BootstrapConfig cfg;
            cfg.n_B = pdb_nb;
            cfg.R = pdb_r;
            const auto rows = dod::compare_pdb(pdb_a, pdb_b, pdb_ns, pdb_beta, pdb_alpha, cfg,
                                               pdb_reps, pdb_seed);
            emit(pdb_out, dod::to_json(rows),
                 [&](std::ostream& os) { dod::write_power_csv(os, rows); });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
