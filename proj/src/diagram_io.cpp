#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pdspace/diagram.hpp"

namespace pdspace {

namespace {

bool is_plane_kind(const MetricPair& pair) {
  return pair.kind() == SpaceKind::EuclideanPlaneDiagonal || pair.kind() == SpaceKind::HalfPlane2nDiagonal;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void check_space_field(const nlohmann::json& space, const MetricPair& pair) {
  if (space.is_string()) {
    if (space.get<std::string>() != space_id_string(pair.id())) {
      throw SpaceMismatch("diagram space id " + space.get<std::string>() + " does not match " +
                          space_id_string(pair.id()));
    }
    return;
  }
  MetricPair declared = MetricPair::from_json(space);
  if (declared.id() != pair.id()) {
    throw SpaceMismatch("diagram declares a " + to_string(declared.kind()) + " space that differs from the configured " +
                        to_string(pair.kind()) + " space");
  }
}

Diagram parse_json(std::string_view input, const MetricPair& pair) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports a byte position; recover the line for the error message
    std::size_t pos = std::min<std::size_t>(e.byte, input.size());
    std::size_t line = 1 + static_cast<std::size_t>(std::count(input.begin(), input.begin() + pos, '\n'));
    std::size_t last_nl = input.rfind('\n', pos == 0 ? 0 : pos - 1);
    std::size_t offset = last_nl == std::string_view::npos ? pos : pos - last_nl - 1;
    throw ParseError(e.what(), line, offset);
  }
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw ParseError("diagram JSON needs a \"points\" array", 1, 0);
  }
  if (j.contains("space") && !j["space"].is_null()) {
    try {
      check_space_field(j["space"], pair);
    } catch (const InvalidSpace& e) {
      throw ParseError(e.what(), 1, 0);
    }
  }
  std::vector<DiagramPoint> raw;
  std::size_t index = 0;
  for (const auto& entry : j["points"]) {
    try {
      auto coords = entry.at("coords").get<std::vector<double>>();
      std::size_t mult = 1;
      if (entry.contains("mult")) {
        auto m = entry["mult"].get<long long>();
        if (m < 1) throw ParseError("multiplicity must be >= 1", 1, index);
        mult = static_cast<std::size_t>(m);
      }
      raw.push_back({pair.point(std::move(coords)), mult});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("point " + std::to_string(index) + ": " + e.what(), 1, index);
    } catch (const InvalidSpace& e) {
      throw ParseError("point " + std::to_string(index) + ": " + e.what(), 1, index);
    }
    ++index;
  }
  return Diagram::canonicalize(pair, std::move(raw));
}

Diagram parse_csv(std::string_view input, const MetricPair& pair, ParseOptions options) {
  if (!is_plane_kind(pair)) throw ParseError("CSV diagrams require a plane-kind space", 1, 0);
  const std::size_t dim = pair.dim();
  std::vector<DiagramPoint> raw;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(start, end - start);
    ++line_no;
    std::string_view body = trim(line);
    if (!body.empty() && body.front() != '#') {
      std::vector<double> fields;
      std::size_t col = 0;
      while (true) {
        std::size_t comma = line.find(',', col);
        std::string_view cell = line.substr(col, comma == std::string_view::npos ? line.npos : comma - col);
        std::string_view value = trim(cell);
        double v = 0.0;
        auto res = std::from_chars(value.data(), value.data() + value.size(), v);
        if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
          throw ParseError("expected a number, got '" + std::string(value) + "'", line_no, col);
        }
        fields.push_back(v);
        if (comma == std::string_view::npos) break;
        col = comma + 1;
      }
      std::size_t mult = 1;
      if (fields.size() == dim + 1) {
        double m = fields.back();
        if (m < 1.0 || m != std::floor(m)) throw ParseError("multiplicity must be a positive integer", line_no, col);
        mult = static_cast<std::size_t>(m);
        fields.pop_back();
      } else if (fields.size() != dim || options.strict) {
        throw ParseError("expected " + std::to_string(dim) + " coordinates and a multiplicity, got " +
                             std::to_string(fields.size()) + " fields",
                         line_no, 0);
      }
      try {
        raw.push_back({pair.point(std::move(fields)), mult});
      } catch (const InvalidSpace& e) {
        throw ParseError(e.what(), line_no, 0);
      }
    }
    if (end == input.size()) break;
    start = end + 1;
  }
  return Diagram::canonicalize(pair, std::move(raw));
}

}  // namespace

std::string space_id_string(SpaceId id) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(id));
  return buf;
}

Diagram parse_diagram(std::string_view input, DiagramFormat format, const MetricPair& pair, ParseOptions options) {
  return format == DiagramFormat::Json ? parse_json(input, pair) : parse_csv(input, pair, options);
}

nlohmann::json diagram_to_json(const Diagram& sigma, const MetricPair& pair) {
  if (sigma.space_id() != pair.id()) throw SpaceMismatch("diagram belongs to a different metric pair");
  nlohmann::json points = nlohmann::json::array();
  for (const auto& entry : sigma.points()) {
    points.push_back({{"coords", entry.point.coords}, {"mult", entry.mult}});
  }
  return {{"space", pair.to_json()}, {"points", std::move(points)}};
}

std::string write_diagram(const Diagram& sigma, DiagramFormat format, const MetricPair& pair) {
  if (format == DiagramFormat::Json) return diagram_to_json(sigma, pair).dump() + "\n";
  if (sigma.space_id() != pair.id()) throw SpaceMismatch("diagram belongs to a different metric pair");
  if (!is_plane_kind(pair)) throw ParseError("CSV diagrams require a plane-kind space", 0, 0);
  std::ostringstream out;
  for (const auto& entry : sigma.points()) {
    for (double c : entry.point.coords) out << shortest(c) << ',';
    out << entry.mult << '\n';
  }
  return out.str();
}

}  // namespace pdspace
