#ifndef DODTEST_USTAT_HPP
#define DODTEST_USTAT_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dodtest/geometry.hpp"

namespace dod {

// All n(n-1)/2 pairwise distances of a point sample, sorted ascending.
// This is the support of the empirical U-distribution: each distance
// carries mass 2/(n(n-1)).
struct DistanceSample {
    std::vector<double> sorted;
    std::size_t n_points = 0;

    std::size_t pair_count() const { return sorted.size(); }
};

DistanceSample pairwise(const PointSample& sample);

// Fraction of stored distances <= t (right-continuous empirical cdf).
double u_cdf(const DistanceSample& d, double t);

// Left-continuous generalized inverse: the ceil(t*N)-th order statistic,
// t in (0,1].
double u_quantile(const DistanceSample& d, double t);

// Empirical quantile function of a uniform discrete law on `values`
// (nondecreasing, each atom of mass 1/len).
struct StepQuantile {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator()(double t) const;  // values[ceil(t*N)] convention
};

// Partition of all index pairs (i,j), 1 <= i < j <= n, into groups with no
// repeated vertex inside a group: n-1 groups of n/2 pairs for even n,
// n groups of (n-1)/2 pairs for odd n (round-robin construction).
struct PairPartition {
    std::vector<std::vector<std::pair<int, int>>> groups;
};

PairPartition partition_pairs(int n);

// Trimmed p-th order Kantorovich functional between two step quantile
// functions:  integral over [beta, 1-beta] of |a(t) - b(t)|^p dt, computed
// exactly on the merged breakpoint grid {i/Na} u {j/Nb} u {beta, 1-beta}.
// Cells cut by the trim bounds enter with their partial width.
double kantorovich_1d(const StepQuantile& a, const StepQuantile& b, double p, double beta);

}  // namespace dod

#endif
