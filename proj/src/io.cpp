#include "coarse/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace coarse {

std::string format_decimal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "cannot format value");
  return std::string(buf, ptr);
}

double parse_decimal(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) throw Error(ErrorCode::Parse, "expected a number or decimal string");
  const auto text = value.get<std::string>();
  double out = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc() || ptr != end) throw Error(ErrorCode::Parse, "bad decimal '" + text + "'");
  return out;
}

Json space_to_json(const SpaceDescription& desc) {
  const auto& space = desc.space;
  Json doc;
  Json points = Json::array();
  for (Index i = 0; i < space.size(); ++i) {
    Json p;
    p["id"] = space.ids()[static_cast<std::size_t>(i)];
    if (!space.coordinates().empty()) {
      Json c = Json::array();
      for (double v : space.coordinates()[static_cast<std::size_t>(i)]) c.push_back(format_decimal(v));
      p["coords"] = std::move(c);
    }
    points.push_back(std::move(p));
  }
  doc["points"] = std::move(points);

  // A metric that is exactly the Euclidean metric of the stored coordinates
  // is written as such; parsing recomputes it bit for bit.
  if (!space.coordinates().empty() &&
      DiscreteSpace::euclidean(space.ids(), space.coordinates()).metric() == space.metric()) {
    doc["metric"] = {{"euclidean", true}};
  } else {
    Json rows = Json::array();
    for (Index i = 0; i < space.size(); ++i) {
      Json row = Json::array();
      for (Index j = 0; j < space.size(); ++j) row.push_back(format_decimal(space.distance(i, j)));
      rows.push_back(std::move(row));
    }
    doc["metric"] = {{"matrix", std::move(rows)}};
  }

  if (space.limits()) {
    Json lim;
    lim["derivative_compact"] = space.limits()->derivative_compact;
    Json tagged = Json::array();
    const auto& tags = space.limits()->tags;
    for (std::size_t p = 0; p < tags.size(); ++p) {
      if (tags[p].kind != PointKind::Limit) continue;
      tagged.push_back({{"point", p}, {"sequence", tags[p].sequence}});
    }
    lim["limit_points"] = std::move(tagged);
    doc["limits"] = std::move(lim);
  }

  if (desc.exhaustion) {
    if (const auto* ball = std::get_if<BallExhaustion>(&*desc.exhaustion)) {
      Json radii = Json::array();
      for (double r : ball->radii) radii.push_back(format_decimal(r));
      doc["exhaustion"] = {{"center", ball->center}, {"radii", std::move(radii)}};
    } else {
      doc["exhaustion"] = {{"levels", std::get<std::vector<IndexSet>>(*desc.exhaustion)}};
    }
  }
  return doc;
}

SpaceDescription space_from_json(const Json& doc) {
  try {
    const auto& pts = doc.at("points");
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;
    bool any_coords = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      ids.push_back(p.contains("id") ? p["id"].get<std::string>() : "p" + std::to_string(i));
      std::vector<double> c;
      if (p.contains("coords")) {
        any_coords = true;
        for (const auto& v : p["coords"]) c.push_back(parse_decimal(v));
      }
      coords.push_back(std::move(c));
    }
    if (any_coords) {
      for (const auto& c : coords) {
        if (c.empty()) throw Error(ErrorCode::Parse, "either every point has coordinates or none does");
      }
    } else {
      coords.clear();
    }

    std::optional<LimitStructure> limits;
    if (doc.contains("limits")) {
      LimitStructure lim;
      lim.tags.assign(ids.size(), LimitTag{});
      lim.derivative_compact = doc["limits"].value("derivative_compact", false);
      for (const auto& entry : doc["limits"].at("limit_points")) {
        const auto p = entry.at("point").get<std::size_t>();
        if (p >= ids.size()) throw Error(ErrorCode::Parse, "limit point index out of range");
        lim.tags[p].kind = PointKind::Limit;
        if (entry.contains("sequence")) lim.tags[p].sequence = entry["sequence"].get<IndexSet>();
      }
      limits = std::move(lim);
    }

    const auto& metric = doc.at("metric");
    const auto n = static_cast<Index>(ids.size());
    std::optional<DiscreteSpace> space;
    if (metric.contains("matrix")) {
      const auto& rows = metric["matrix"];
      if (static_cast<Index>(rows.size()) != n) throw Error(ErrorCode::Parse, "metric row count mismatch");
      MetricMatrix m(n, n);
      for (Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<Index>(row.size()) != n) throw Error(ErrorCode::Parse, "metric row length mismatch");
        for (Index j = 0; j < n; ++j) m(i, j) = parse_decimal(row[static_cast<std::size_t>(j)]);
      }
      space.emplace(std::move(ids), std::move(m), std::move(limits), std::move(coords));
    } else if (metric.value("euclidean", false)) {
      if (coords.empty()) throw Error(ErrorCode::Parse, "euclidean metric needs coordinates");
      space.emplace(DiscreteSpace::euclidean(std::move(ids), std::move(coords), std::move(limits)));
    } else {
      throw Error(ErrorCode::Parse, "metric must give 'matrix' or 'euclidean'");
    }

    std::optional<ExhaustionSpec> exhaustion;
    if (doc.contains("exhaustion")) {
      const auto& e = doc["exhaustion"];
      if (e.contains("levels")) {
        exhaustion = e["levels"].get<std::vector<IndexSet>>();
      } else {
        BallExhaustion ball;
        ball.center = e.at("center").get<Index>();
        for (const auto& r : e.at("radii")) ball.radii.push_back(parse_decimal(r));
        exhaustion = std::move(ball);
      }
    }
    return {std::move(*space), std::move(exhaustion)};
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::Parse, ex.what());
  }
}

std::string serialize_space(const SpaceDescription& desc) { return space_to_json(desc).dump(1) + "\n"; }

SpaceDescription parse_space(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::Parse, ex.what());
  }
  return space_from_json(doc);
}

SpaceDescription read_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_space(buf.str());
}

Json report_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return std::strtod(buf, nullptr);
}

void write_csv_block(std::ostream& os, std::string_view label, const MetricMatrix& matrix) {
  char buf[32];
  os << "# " << label << "\n";
  for (Index i = 0; i < matrix.rows(); ++i) {
    for (Index j = 0; j < matrix.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.12g", matrix(i, j));
      os << (j ? "," : "") << buf;
    }
    os << "\n";
  }
  os << "\n";
}

void write_csv_block(std::ostream& os, std::string_view label, const PointValues& values) {
  char buf[32];
  os << "# " << label << "\n";
  os << "index,value\n";
  for (Index i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", values(i));
    os << i << "," << buf << "\n";
  }
  os << "\n";
}

}  // namespace coarse
