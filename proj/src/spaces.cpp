#include "dodtest/spaces.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace dod {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Point draw_unit_square(Rng& g) {
    return Point(uniform01(g), uniform01(g));
}

Point draw_disc(Rng& g, double radius) {
    // sqrt-radius polar method: exactly uniform on the disc
    const double r = radius * std::sqrt(uniform01(g));
    const double phi = 2.0 * kPi * uniform01(g);
    return Point(r * std::cos(phi), r * std::sin(phi));
}

// Rejection from the origin-centered square; accept iff inside the disc.
// radius >= sqrt(2)/2 accepts everything (the full square).
Point draw_square_cap_disc(Rng& g, double radius) {
    const double r2 = radius * radius;
    for (;;) {
        const double x = uniform01(g) - 0.5;
        const double y = uniform01(g) - 0.5;
        if (x * x + y * y <= r2) {
            return Point(x, y);
        }
    }
}

Point draw_union_squares(Rng& g, double gap) {
    // equal areas: fair coin between the two unit squares
    const double shift = (g() & 1u) ? 0.0 : 1.0 + gap;
    return Point(shift + uniform01(g), uniform01(g));
}

}  // namespace

void SpaceSpec::validate() const {
    switch (family) {
        case Family::Disc:
        case Family::SquareCapDisc:
            if (!(radius > 0.0)) {
                throw std::invalid_argument("SpaceSpec: radius must be > 0");
            }
            break;
        case Family::UnionSquares:
            if (!(gap >= 0.0)) {
                throw std::invalid_argument("SpaceSpec: gap must be >= 0");
            }
            break;
        case Family::Spiral:
            if (!(v > 0.0)) {
                throw std::invalid_argument("SpaceSpec: spiral speed v must be > 0");
            }
            if (!(noise >= 0.0)) {
                throw std::invalid_argument("SpaceSpec: spiral noise must be >= 0");
            }
            break;
        case Family::FilePoints:
            if (path.empty()) {
                throw std::invalid_argument("SpaceSpec: FilePoints requires a path");
            }
            break;
        case Family::UnitSquare:
            break;
    }
}

SpaceSpec SpaceSpec::unit_square(Metric m) {
    SpaceSpec s;
    s.family = Family::UnitSquare;
    s.metric = m;
    return s;
}

SpaceSpec SpaceSpec::disc(double radius, Metric m) {
    SpaceSpec s;
    s.family = Family::Disc;
    s.metric = m;
    s.radius = radius;
    return s;
}

SpaceSpec SpaceSpec::square_cap_disc(double radius) {
    SpaceSpec s;
    s.family = Family::SquareCapDisc;
    s.metric = Metric::Euclidean;
    s.radius = radius;
    return s;
}

SpaceSpec SpaceSpec::union_squares(double gap, Metric m) {
    SpaceSpec s;
    s.family = Family::UnionSquares;
    s.metric = m;
    s.gap = gap;
    return s;
}

SpaceSpec SpaceSpec::spiral(double v, double noise) {
    SpaceSpec s;
    s.family = Family::Spiral;
    s.metric = Metric::Euclidean;
    s.v = v;
    s.noise = noise;
    return s;
}

SpaceSpec SpaceSpec::file_points(const std::string& path, Metric m) {
    SpaceSpec s;
    s.family = Family::FilePoints;
    s.metric = m;
    s.path = path;
    return s;
}

Point spiral_point(double r, double s, double s_prime, double v, double noise) {
    return Point(r * std::sin(v * r) + noise * s, r * std::cos(v * r) + noise * s_prime);
}

Point spiral_draw(double v, double noise, Rng& rng) {
    const double r = uniform01(rng);
    const double s = normal01(rng);
    const double s_prime = normal01(rng);
    return spiral_point(r, s, s_prime, v, noise);
}

PointSample sample(const SpaceSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n < 1) {
        throw std::invalid_argument("sample: need n >= 1");
    }
    if (spec.family == Family::FilePoints) {
        PointSample base = load_calpha(spec.path);
        base.metric = spec.metric;
        return subsample_points(base, n, seed);
    }

    Rng g(seed);
    PointSample out;
    out.metric = spec.metric;
    out.seed = seed;
    out.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (spec.family) {
            case Family::UnitSquare:
                out.points.push_back(draw_unit_square(g));
                break;
            case Family::Disc:
                out.points.push_back(draw_disc(g, spec.radius));
                break;
            case Family::SquareCapDisc:
                out.points.push_back(draw_square_cap_disc(g, spec.radius));
                break;
            case Family::UnionSquares:
                out.points.push_back(draw_union_squares(g, spec.gap));
                break;
            case Family::Spiral:
                out.points.push_back(spiral_draw(spec.v, spec.noise, g));
                break;
            case Family::FilePoints:
                break;  // handled above
        }
    }
    return out;
}

PointSample subsample_points(const PointSample& base, std::size_t n, std::uint64_t seed) {
    if (n > base.points.size()) {
        throw std::invalid_argument("subsample_points: requested more points than available (" +
                                    std::to_string(n) + " > " +
                                    std::to_string(base.points.size()) + ")");
    }
    Rng g(seed);
    const auto idx = sample_without_replacement(g, base.points.size(), n);
    PointSample out;
    out.metric = base.metric;
    out.seed = seed;
    out.points.reserve(n);
    for (std::size_t i : idx) {
        out.points.push_back(base.points[i]);
    }
    return out;
}

namespace {

// Fixed-column PDB v3.3 slices (0-based, half-open).
std::string slice(const std::string& line, std::size_t begin, std::size_t end) {
    if (line.size() <= begin) {
        return {};
    }
    return line.substr(begin, std::min(end, line.size()) - begin);
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

PointSample load_calpha(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_calpha: cannot open " + path);
    }

    PointSample out;
    out.metric = Metric::Euclidean;

    // residue identity = (chain, resseq, icode); first altloc wins
    std::set<std::tuple<char, std::string, char>> seen;
    std::string line;
    while (std::getline(in, line)) {
        const std::string rec = slice(line, 0, 6);
        if (rec.rfind("ENDMDL", 0) == 0) {
            break;  // first model only
        }
        if (rec != "ATOM  ") {
            continue;  // HETATM and everything else ignored
        }
        if (strip(slice(line, 12, 16)) != "CA") {
            continue;
        }
        const char chain = line.size() > 21 ? line[21] : ' ';
        const std::string resseq = strip(slice(line, 22, 26));
        const char icode = line.size() > 26 ? line[26] : ' ';
        if (!seen.insert({chain, resseq, icode}).second) {
            continue;
        }
        try {
            const double x = std::stod(slice(line, 30, 38));
            const double y = std::stod(slice(line, 38, 46));
            const double z = std::stod(slice(line, 46, 54));
            out.points.emplace_back(x, y, z);
        } catch (const std::exception&) {
            throw std::runtime_error("load_calpha: malformed coordinate field in " + path);
        }
        if (!out.points.back().finite()) {
            throw std::runtime_error("load_calpha: non-finite coordinate in " + path);
        }
    }
    if (out.points.empty()) {
        throw std::runtime_error("load_calpha: no CA atoms found in " + path);
    }
    return out;
}

}  // namespace dod
