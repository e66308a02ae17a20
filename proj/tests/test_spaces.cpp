#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "dodtest/analytic.hpp"
#include "dodtest/spaces.hpp"
#include "dodtest/ustat.hpp"
#include "test_support.hpp"

using namespace dod;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/dodtest_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("unit square sampling stays in support and reproduces") {
    const auto spec = SpaceSpec::unit_square(Metric::SupNorm);
    const auto s = sample(spec, 3, 123);
    REQUIRE(s.points.size() == 3);
    for (const auto& pt : s.points) {
        CHECK(pt.x() >= 0.0);
        CHECK(pt.x() <= 1.0);
        CHECK(pt.y() >= 0.0);
        CHECK(pt.y() <= 1.0);
    }
    const auto again = sample(spec, 3, 123);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(s.points[i].x() == again.points[i].x());
        CHECK(s.points[i].y() == again.points[i].y());
    }
    const auto other = sample(spec, 3, 124);
    bool all_equal = true;
    for (std::size_t i = 0; i < 3; ++i) {
        all_equal = all_equal && s.points[i].x() == other.points[i].x();
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("disc and square-cap-disc support") {
    const auto disc = sample(SpaceSpec::disc(0.5), 500, 5);
    for (const auto& pt : disc.points) {
        CHECK(pt.x() * pt.x() + pt.y() * pt.y() <= 0.25 + 1e-12);
    }
    const auto cap = sample(SpaceSpec::square_cap_disc(0.55), 500, 6);
    for (const auto& pt : cap.points) {
        CHECK(std::fabs(pt.x()) <= 0.5);
        CHECK(std::fabs(pt.y()) <= 0.5);
        CHECK(pt.x() * pt.x() + pt.y() * pt.y() <= 0.55 * 0.55 + 1e-12);
    }
}

TEST_CASE("square-cap-disc inner-disc mass matches the rejection area oracle") {
    const double r = std::sqrt(2.0) / 2.0;
    const auto cap = sample(SpaceSpec::square_cap_disc(r), 20000, 777);
    std::size_t inside = 0;
    for (const auto& pt : cap.points) {
        if (pt.x() * pt.x() + pt.y() * pt.y() <= 0.25) {
            ++inside;
        }
    }
    const double freq = static_cast<double>(inside) / 20000.0;

    // rejection-sampling area oracle with independent draws
    Rng g(31337);
    std::size_t hit_region = 0, hit_inner = 0;
    for (int k = 0; k < 400000; ++k) {
        const double x = uniform01(g) - 0.5;
        const double y = uniform01(g) - 0.5;
        if (x * x + y * y <= r * r) {
            ++hit_region;
            if (x * x + y * y <= 0.25) {
                ++hit_inner;
            }
        }
    }
    const double oracle_frac = static_cast<double>(hit_inner) / static_cast<double>(hit_region);
    // pi/4 for the full square; both estimates carry MC noise
    CHECK(freq == doctest::Approx(oracle_frac).epsilon(0.03));
    CHECK(freq == doctest::Approx(3.14159265 / 4.0).epsilon(0.03));
}

TEST_CASE("union of squares: support and across-gap distances") {
    const auto s = sample(SpaceSpec::union_squares(4.0), 400, 11);
    for (const auto& pt : s.points) {
        const bool left = pt.x() >= 0.0 && pt.x() <= 1.0;
        const bool right = pt.x() >= 5.0 && pt.x() <= 6.0;
        CHECK((left || right));
        CHECK(pt.y() >= 0.0);
        CHECK(pt.y() <= 1.0);
    }
    const auto d = pairwise(s);
    for (double value : d.sorted) {
        CHECK((value <= 1.0 + 1e-12 || (value >= 4.0 - 1e-12 && value <= 6.0 + 1e-12)));
    }
}

TEST_CASE("spiral draw closed form") {
    // R = 1, v = pi/2, no noise -> (sin(pi/2), cos(pi/2)) = (1, ~0)
    const Point p = spiral_point(1.0, 0.0, 0.0, 3.14159265358979323846 / 2.0, 0.0);
    CHECK(p.x() == doctest::Approx(1.0));
    CHECK(p.y() == doctest::Approx(0.0).epsilon(1e-9));

    const Point origin = spiral_point(0.0, 5.0, -3.0, 2.0, 0.0);
    CHECK(origin.x() == 0.0);
    CHECK(origin.y() == 0.0);
}

TEST_CASE("spiral radius is uniform at zero noise") {
    Rng g(202);
    std::vector<double> radii;
    radii.reserve(10000);
    for (int k = 0; k < 10000; ++k) {
        const Point p = spiral_draw(2.0, 0.0, g);
        radii.push_back(std::sqrt(p.x() * p.x() + p.y() * p.y()));
    }
    // |(R sin, R cos)| = R ~ U[0,1]
    const double d = oracle::ks_against_cdf(radii, [](double t) {
        return std::clamp(t, 0.0, 1.0);
    });
    CHECK(d < 0.017);  // ~1.63/sqrt(n) at the 1% level
}

TEST_CASE("pairwise distance law of the sup-norm square matches the closed form") {
    const auto pts = sample(SpaceSpec::unit_square(Metric::SupNorm), 2000, 404);
    const auto d = pairwise(pts);
    const auto law = square_supnorm_law();
    const double ks = oracle::ks_against_cdf(d.sorted, law.cdf);
    CHECK(ks < 0.05);
}

TEST_CASE("metric properties: symmetry, identity, triangle inequality") {
    Rng g(606);
    for (Metric m : {Metric::Euclidean, Metric::SupNorm}) {
        for (int trial = 0; trial < 300; ++trial) {
            const Point a(uniform(g, -2, 2), uniform(g, -2, 2), uniform(g, -2, 2));
            const Point b(uniform(g, -2, 2), uniform(g, -2, 2), uniform(g, -2, 2));
            const Point c(uniform(g, -2, 2), uniform(g, -2, 2), uniform(g, -2, 2));
            CHECK(distance(a, b, m) == distance(b, a, m));
            CHECK(distance(a, a, m) == 0.0);
            CHECK(distance(a, c, m) <= distance(a, b, m) + distance(b, c, m) + 1e-12);
        }
    }
}

TEST_CASE("sample validation") {
    CHECK_THROWS_AS(sample(SpaceSpec::disc(-1.0), 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample(SpaceSpec::spiral(0.0), 10, 1), std::invalid_argument);
    SpaceSpec bad_noise = SpaceSpec::spiral(2.0);
    bad_noise.noise = -0.1;
    CHECK_THROWS_AS(sample(bad_noise, 10, 1), std::invalid_argument);
    SpaceSpec bad_gap = SpaceSpec::union_squares(-2.0);
    CHECK_THROWS_AS(sample(bad_gap, 10, 1), std::invalid_argument);
}

TEST_CASE("load_calpha parses fixed columns") {
    const std::string one =
        "HEADER    TEST\n"
        "ATOM      1  N   ALA A   1      11.000  12.000  13.000  1.00  0.00           N\n"
        "ATOM      2  CA  ALA A   1       1.000   2.000   3.000  1.00  0.00           C\n"
        "TER\n";
    TempFile f1("single.pdb", one);
    const auto s = load_calpha(f1.path);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].x() == doctest::Approx(1.0));
    CHECK(s.points[0].y() == doctest::Approx(2.0));
    CHECK(s.points[0].z() == doctest::Approx(3.0));
    CHECK(s.metric == Metric::Euclidean);
}

TEST_CASE("load_calpha keeps the first altloc only") {
    const std::string two_altloc =
        "ATOM      1  CA AALA A   1       1.000   2.000   3.000  0.50  0.00           C\n"
        "ATOM      2  CA BALA A   1       9.000   9.000   9.000  0.50  0.00           C\n"
        "ATOM      3  CA  GLY A   2       4.000   5.000   6.000  1.00  0.00           C\n";
    TempFile f("altloc.pdb", two_altloc);
    const auto s = load_calpha(f.path);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].x() == doctest::Approx(1.0));
    CHECK(s.points[1].x() == doctest::Approx(4.0));
}

TEST_CASE("load_calpha ignores HETATM and later models") {
    const std::string content =
        "MODEL        1\n"
        "ATOM      1  CA  ALA A   1       1.000   2.000   3.000  1.00  0.00           C\n"
        "HETATM    2  CA  CA  A 101       7.000   7.000   7.000  1.00  0.00          CA\n"
        "ENDMDL\n"
        "MODEL        2\n"
        "ATOM      3  CA  ALA A   1       8.000   8.000   8.000  1.00  0.00           C\n"
        "ENDMDL\n";
    TempFile f("models.pdb", content);
    const auto s = load_calpha(f.path);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].x() == doctest::Approx(1.0));
}

TEST_CASE("load_calpha error paths") {
    CHECK_THROWS_AS(load_calpha("/nonexistent/file.pdb"), std::runtime_error);
    TempFile empty("empty.pdb", "HEADER    NOTHING HERE\n");
    CHECK_THROWS_AS(load_calpha(empty.path), std::runtime_error);
    TempFile bad("nan.pdb",
                 "ATOM      1  CA  ALA A   1         nan   2.000   3.000  1.00  0.00\n");
    CHECK_THROWS_AS(load_calpha(bad.path), std::runtime_error);
}

TEST_CASE("file points subsampling") {
    std::string content;
    for (int i = 0; i < 20; ++i) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "ATOM  %5d  CA  ALA A%4d    %8.3f%8.3f%8.3f  1.00  0.00           C\n",
                      i + 1, i + 1, static_cast<double>(i), 0.0, 0.0);
        content += buf;
    }
    TempFile f("chain.pdb", content);
    const auto spec = SpaceSpec::file_points(f.path);
    const auto s = sample(spec, 5, 9);
    CHECK(s.points.size() == 5);
    CHECK_THROWS_AS(sample(spec, 21, 9), std::invalid_argument);
}
