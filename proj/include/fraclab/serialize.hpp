#pragma once

#include "fraclab/estimators.hpp"
#include "fraclab/fields.hpp"
#include "fraclab/geometry.hpp"
#include "fraclab/probes.hpp"
#include "fraclab/profiles.hpp"

#include <json.hpp>

#include <string>

namespace fraclab {

using json = nlohmann::ordered_json;

json to_json(const Seed& s);
json to_json(const FieldSpec& spec);
json to_json(const DimEstimate& e);
json to_json(const ProbeReport& r);

// CSV, one row per point: coordinates..., weight
std::string cloud_csv(const PointCloud& cloud);
std::string measure_csv(const DiscreteMeasure& mu);
PointCloud cloud_from_csv(const std::string& text, int dim);

// CSV with a JSON metadata comment line: "# {...}" then t, x_1..x_d rows
std::string path_csv(const SamplePath& path);

// (s, value, std_error) rows
std::string profile_csv(const ProfileCurve& curve);

// (scale, x, y) rows of a probe's tail / envelope curves
std::string probe_curves_csv(const ProbeReport& r);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace fraclab
