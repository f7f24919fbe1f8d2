#pragma once

// Space-description files and report formatting.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "coarse/space.hpp"

namespace coarse {

using Json = nlohmann::ordered_json;

struct SpaceDescription {
  DiscreteSpace space;
  std::optional<ExhaustionSpec> exhaustion;

  friend bool operator==(const SpaceDescription&, const SpaceDescription&) = default;
};

/// Shortest decimal string that parses back to the same double.
std::string format_decimal(double value);
/// Accepts a JSON number or a decimal string.
double parse_decimal(const Json& value);

/// Metrics equal to the Euclidean metric of the coordinates are written as
/// {"euclidean": true}; any other metric as a matrix of decimal strings.
Json space_to_json(const SpaceDescription& desc);
SpaceDescription space_from_json(const Json& doc);

std::string serialize_space(const SpaceDescription& desc);
SpaceDescription parse_space(std::string_view text);
SpaceDescription read_space_file(const std::string& path);

/// Rounds to 12 significant digits; non-finite values become null.
Json report_number(double value);

/// Labeled CSV block: "# <label>" line followed by rows.
void write_csv_block(std::ostream& os, std::string_view label, const MetricMatrix& matrix);
void write_csv_block(std::ostream& os, std::string_view label, const PointValues& values);

}  // namespace coarse
