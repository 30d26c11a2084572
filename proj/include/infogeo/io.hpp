#pragma once

// JSON documents for points, tangents and metric specifications. Parse
// failures raise ErrorCode::parse with the offending field path.

#include "infogeo/metric.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace infogeo {

using Json = nlohmann::json;

/// {"n": 2, "D": [[..],[..]], "u": [..]}
Point point_from_json(const Json& j, const std::string& path = "$");
Json point_to_json(const Point& pt);
Point parse_point(std::string_view text);
std::string serialize_point(const Point& pt);

/// {"X": [[..]], "x": [..]}; "x" may be omitted (zero). n = 0 accepts any
/// consistent shape.
Tangent tangent_from_json(const Json& j, int n = 0, const std::string& path = "$");
Json tangent_to_json(const Tangent& v);
Tangent parse_tangent(std::string_view text, int n = 0);

MetricSpec metric_spec_from_json(const Json& j, const std::string& path = "$");
Json metric_spec_to_json(const MetricSpec& spec);
MetricSpec parse_metric_spec(std::string_view text);

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

/// Whole file as text; parse error when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace infogeo
