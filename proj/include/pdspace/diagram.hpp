#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdspace/extended_distance.hpp"
#include "pdspace/metric_pair.hpp"

namespace pdspace {

struct DiagramPoint {
  Point point;
  std::size_t mult = 1;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/// A finite persistence diagram in canonical form: no points of A, duplicates merged
/// into multiplicities, sorted lexicographically by coordinates.
///
/// Two raw multisets that differ only by points of A canonicalize to equal diagrams,
/// so operator== decides equality of ~_A classes.
class Diagram {
 public:
  /// The empty diagram over `pair`.
  explicit Diagram(const MetricPair& pair);

  /// Drops A-points, merges duplicates, sorts. Throws SpaceMismatch for foreign points.
  static Diagram canonicalize(const MetricPair& pair, std::vector<DiagramPoint> raw);
  static Diagram canonicalize(const MetricPair& pair, const std::vector<Point>& raw);

  SpaceId space_id() const { return space_id_; }
  std::span<const DiagramPoint> points() const { return points_; }
  /// Number of distinct off-A points.
  std::size_t distinct() const { return points_.size(); }
  /// Number of points counted with multiplicity.
  std::size_t size() const { return total_; }
  bool empty() const { return points_.empty(); }

  /// Points repeated by multiplicity, in canonical order.
  std::vector<Point> expanded() const;

  /// Same points re-tagged for the quotient space pair/A. Throws SpaceMismatch unless
  /// `quotient` is QuotientOf the diagram's space.
  Diagram to_quotient(const MetricPair& quotient) const;

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  Diagram(SpaceId id, std::vector<DiagramPoint> points);

  SpaceId space_id_;
  std::vector<DiagramPoint> points_;
  std::size_t total_ = 0;
};

/// d_p(sigma, empty): the p-norm of the distances of sigma's points to A (max for p = inf).
ExtendedDistance total_persistence(const Diagram& sigma, Exponent p, const MetricPair& pair);

enum class DiagramFormat { Json, Csv };

struct ParseOptions {
  /// Require the multiplicity column in CSV input.
  bool strict = false;
};

/// JSON: {"space": <descriptor or id>, "points": [{"coords": [...], "mult": k}, ...]}.
/// CSV (plane kinds only): one "birth,death[,mult]" row per point; '#' starts a comment line.
Diagram parse_diagram(std::string_view input, DiagramFormat format, const MetricPair& pair,
                      ParseOptions options = {});
std::string write_diagram(const Diagram& sigma, DiagramFormat format, const MetricPair& pair);

nlohmann::json diagram_to_json(const Diagram& sigma, const MetricPair& pair);

/// Hex rendering of a space id, as accepted in the JSON "space" field.
std::string space_id_string(SpaceId id);

}  // namespace pdspace
