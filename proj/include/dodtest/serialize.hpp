#ifndef DODTEST_SERIALIZE_HPP
#define DODTEST_SERIALIZE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dodtest/bench.hpp"
#include "dodtest/dod.hpp"
#include "dodtest/spaces.hpp"

namespace dod {

// SpaceSpec <-> JSON object {"family": ..., "params": {...}, "metric": ...}.
nlohmann::json to_json(const SpaceSpec& spec);
SpaceSpec space_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DoDResult& r);
nlohmann::json to_json(const TestOutcome& o);
nlohmann::json to_json(const PowerRow& row);
nlohmann::json to_json(const std::vector<PowerRow>& rows);

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);
std::string family_name(Family f);
std::string method_name(Method m);
Method method_from_name(const std::string& name);

// CSV writers: header row, one record per line; plain column for draws.
void write_power_csv(std::ostream& os, const std::vector<PowerRow>& rows);
void write_column_csv(std::ostream& os, const std::string& header,
                      const std::vector<double>& values);
void write_points_csv(std::ostream& os, const PointSample& sample);

}  // namespace dod

#endif
