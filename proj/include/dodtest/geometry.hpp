#ifndef DODTEST_GEOMETRY_HPP
#define DODTEST_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace dod {

// A point in R^2 or R^3. Unused coordinates stay zero, so the metric
// kernels can treat everything as 3-D.
struct Point {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int dim = 2;

    Point() = default;
    Point(double x, double y) : c{x, y, 0.0}, dim(2) {}
    Point(double x, double y, double z) : c{x, y, z}, dim(3) {}

    double x() const { return c[0]; }
    double y() const { return c[1]; }
    double z() const { return c[2]; }
    bool finite() const {
        return std::isfinite(c[0]) && std::isfinite(c[1]) && std::isfinite(c[2]);
    }
};

enum class Metric { Euclidean, SupNorm };

inline double distance(const Point& a, const Point& b, Metric m) {
    const double dx = a.c[0] - b.c[0];
    const double dy = a.c[1] - b.c[1];
    const double dz = a.c[2] - b.c[2];
    if (m == Metric::Euclidean) {
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    return std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)});
}

// A finite sample from a metric measure space: the points, the metric the
// space carries, and the seed that produced the draw.
struct PointSample {
    std::vector<Point> points;
    Metric metric = Metric::Euclidean;
    std::uint64_t seed = 0;

    std::size_t size() const { return points.size(); }
};

}  // namespace dod

#endif
