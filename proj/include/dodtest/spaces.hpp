#ifndef DODTEST_SPACES_HPP
#define DODTEST_SPACES_HPP

#include <cstdint>
#include <string>

#include "dodtest/geometry.hpp"
#include "dodtest/rng.hpp"

namespace dod {

// Sampleable space families.
//
//  UnitSquare      uniform on [0,1]^2
//  Disc            uniform on the disc of given radius centered at the origin
//  SquareCapDisc   uniform on ([-1/2,1/2]^2 intersected with the disc of the
//                  given radius centered at the origin); radius sqrt(2)/2
//                  recovers the full square
//  UnionSquares    uniform on [0,1]^2 united with its horizontal translate
//                  [1+gap, 2+gap] x [0,1]
//  Spiral          noisy spiral (R sin(vR) + noise*S, R cos(vR) + noise*S'),
//                  R ~ U[0,1], S, S' ~ N(0,1) independent
//  FilePoints      uniform subsample (without replacement) of the points in a
//                  coordinate file previously loaded from disk
enum class Family { UnitSquare, Disc, SquareCapDisc, UnionSquares, Spiral, FilePoints };

struct SpaceSpec {
    Family family = Family::UnitSquare;
    Metric metric = Metric::Euclidean;
    double radius = 0.5;        // Disc, SquareCapDisc
    double gap = 4.0;           // UnionSquares
    double v = 10.0;            // Spiral winding speed
    double noise = 0.03;        // Spiral noise level
    std::string path;           // FilePoints

    // Throws std::invalid_argument on bad parameters.
    void validate() const;

    static SpaceSpec unit_square(Metric m = Metric::Euclidean);
    static SpaceSpec disc(double radius, Metric m = Metric::Euclidean);
    static SpaceSpec square_cap_disc(double radius);
    static SpaceSpec union_squares(double gap, Metric m = Metric::SupNorm);
    static SpaceSpec spiral(double v, double noise = 0.03);
    static SpaceSpec file_points(const std::string& path, Metric m = Metric::Euclidean);
};

// n i.i.d. draws from the space's measure. Deterministic in (spec, n, seed).
PointSample sample(const SpaceSpec& spec, std::size_t n, std::uint64_t seed);

// One spiral draw with explicit latent variables; spiral_draw pulls
// (R, S, S') from the generator.
Point spiral_point(double r, double s, double s_prime, double v, double noise);
Point spiral_draw(double v, double noise, Rng& rng);

// Cα coordinates (atom name "CA" in ATOM records) of the first model of a
// PDB-format file, in file order, first altloc per residue. Euclidean metric.
PointSample load_calpha(const std::string& path);

// n distinct points drawn uniformly without replacement from base.
PointSample subsample_points(const PointSample& base, std::size_t n, std::uint64_t seed);

}  // namespace dod

#endif
