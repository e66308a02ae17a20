#include "dodtest/serialize.hpp"

#include <ostream>
#include <stdexcept>

namespace dod {

using nlohmann::json;

std::string metric_name(Metric m) {
    return m == Metric::Euclidean ? "euclidean" : "supnorm";
}

Metric metric_from_name(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "supnorm") return Metric::SupNorm;
    throw std::invalid_argument("unknown metric: " + name);
}

std::string family_name(Family f) {
    switch (f) {
        case Family::UnitSquare: return "unit_square";
        case Family::Disc: return "disc";
        case Family::SquareCapDisc: return "square_cap_disc";
        case Family::UnionSquares: return "union_squares";
        case Family::Spiral: return "spiral";
        case Family::FilePoints: return "file_points";
    }
    throw std::logic_error("unreachable family");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::DoD: return "dod";
        case Method::DoDIndependent: return "dod-ind";
        case Method::DTM: return "dtm";
    }
    throw std::logic_error("unreachable method");
}

Method method_from_name(const std::string& name) {
    if (name == "dod") return Method::DoD;
    if (name == "dod-ind") return Method::DoDIndependent;
    if (name == "dtm") return Method::DTM;
    throw std::invalid_argument("unknown method: " + name + " (expected dod, dod-ind or dtm)");
}

json to_json(const SpaceSpec& spec) {
    json params = json::object();
    switch (spec.family) {
        case Family::Disc:
        case Family::SquareCapDisc:
            params["radius"] = spec.radius;
            break;
        case Family::UnionSquares:
            params["gap"] = spec.gap;
            break;
        case Family::Spiral:
            params["v"] = spec.v;
            params["noise"] = spec.noise;
            break;
        case Family::FilePoints:
            params["path"] = spec.path;
            break;
        case Family::UnitSquare:
            break;
    }
    return json{{"family", family_name(spec.family)},
                {"params", params},
                {"metric", metric_name(spec.metric)}};
}

SpaceSpec space_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family")) {
        throw std::invalid_argument("SpaceSpec JSON must be an object with a 'family' key");
    }
    const std::string fam = j.at("family").get<std::string>();
    const json params = j.value("params", json::object());
    SpaceSpec spec;
    if (fam == "unit_square") {
        spec.family = Family::UnitSquare;
    } else if (fam == "disc") {
        spec.family = Family::Disc;
        spec.radius = params.value("radius", 0.5);
    } else if (fam == "square_cap_disc") {
        spec.family = Family::SquareCapDisc;
        spec.radius = params.value("radius", 0.5);
    } else if (fam == "union_squares") {
        spec.family = Family::UnionSquares;
        spec.gap = params.value("gap", 4.0);
    } else if (fam == "spiral") {
        spec.family = Family::Spiral;
        spec.v = params.value("v", 10.0);
        spec.noise = params.value("noise", 0.03);
    } else if (fam == "file_points") {
        spec.family = Family::FilePoints;
        spec.path = params.value("path", std::string{});
    } else {
        throw std::invalid_argument("unknown space family: " + fam);
    }
    spec.metric = metric_from_name(j.value("metric", std::string{"euclidean"}));
    spec.validate();
    return spec;
}

json to_json(const DoDResult& r) {
    return json{{"statistic", r.statistic}, {"scaled", r.scaled}, {"beta", r.beta},
                {"p", r.p},                 {"n", r.n},           {"m", r.m}};
}

json to_json(const TestOutcome& o) {
    return json{{"scaled_statistic", o.scaled_statistic},
                {"critical_value", o.critical_value},
                {"alpha", o.alpha},
                {"reject", o.reject},
                {"calibration", o.calibration == Calibration::Bootstrap ? "bootstrap" : "limit_mc"}};
}

json to_json(const PowerRow& row) {
    return json{{"n", row.n},
                {"rejection_rate", row.rejection_rate},
                {"replications", row.replications},
                {"mc_stderr", row.mc_stderr}};
}

json to_json(const std::vector<PowerRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back(to_json(row));
    }
    return arr;
}

void write_power_csv(std::ostream& os, const std::vector<PowerRow>& rows) {
    os << "n,rejection_rate,replications,mc_stderr\n";
    for (const auto& row : rows) {
        os << row.n << ',' << row.rejection_rate << ',' << row.replications << ','
           << row.mc_stderr << '\n';
    }
}

void write_column_csv(std::ostream& os, const std::string& header,
                      const std::vector<double>& values) {
    os << header << '\n';
    for (double v : values) {
        os << v << '\n';
    }
}

void write_points_csv(std::ostream& os, const PointSample& sample) {
    const bool three_d = !sample.points.empty() && sample.points.front().dim == 3;
    os << (three_d ? "x,y,z\n" : "x,y\n");
    for (const auto& pt : sample.points) {
        os << pt.x() << ',' << pt.y();
        if (three_d) {
            os << ',' << pt.z();
        }
        os << '\n';
    }
}

}  // namespace dod
