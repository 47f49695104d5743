#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdspace/errors.hpp"

namespace pdspace {

using SpaceId = std::uint64_t;

enum class SpaceKind {
  EuclideanPlaneDiagonal,
  HalfPlane2nDiagonal,
  HalfLineOrigin,
  FiniteExplicit,
  SupCubeTruncatedC0,
  QuotientOf,
};

enum class Norm { Sup, Euclidean };

std::string to_string(SpaceKind kind);
std::string to_string(Norm norm);

/// An element of the ambient space X, tagged with the owning pair.
struct Point {
  SpaceId space_id = 0;
  std::vector<double> coords;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) {
    if (auto c = a.space_id <=> b.space_id; c != 0) return std::partial_ordering(c);
    return std::lexicographical_compare_three_way(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                                  b.coords.end());
  }
};

/// The collapsed class {A} of the quotient X/A.
struct Basepoint {
  friend bool operator==(Basepoint, Basepoint) = default;
};

using QuotientPoint = std::variant<Point, Basepoint>;

namespace detail {
struct SpaceData;
}

/// A computable metric pair (X, A). Immutable; copies share state.
///
/// Model spaces:
///  - EuclideanPlaneDiagonal: {(b, d) : 0 <= b <= d} with A the diagonal.
///  - HalfPlane2nDiagonal(n): n copies of the above, sup or euclidean norm over all 2n coordinates.
///  - HalfLineOrigin: [0, inf) with A = {0}.
///  - FiniteExplicit: points 0..N-1 with a validated distance matrix and an explicit A subset.
///    Points carry their index as their single coordinate.
///  - SupCubeTruncatedC0(m): R^m with the sup norm and A = {0}.
///  - QuotientOf(inner): inner/A with metric min(d(x, y), d(x, A) + d(y, A)).
class MetricPair {
 public:
  static MetricPair plane(Norm norm = Norm::Sup);
  static MetricPair half_plane_2n(std::size_t n, Norm norm = Norm::Sup);
  static MetricPair half_line();
  /// Throws InvalidSpace unless `matrix` is a metric and `a_points` is a non-empty index set.
  static MetricPair finite(std::vector<std::vector<double>> matrix, std::vector<std::size_t> a_points,
                           std::vector<std::string> labels = {});
  static MetricPair c0_truncation(std::size_t m);
  static MetricPair quotient_of(const MetricPair& inner);

  SpaceKind kind() const;
  Norm norm() const;
  std::size_t dim() const;
  SpaceId id() const;
  bool is_proper() const;
  bool has_projection() const;
  bool has_geodesic() const;
  /// Inner pair for QuotientOf; nullptr otherwise.
  const MetricPair* inner() const;

  /// Builds a point of this space; throws InvalidSpace when coords fall outside X.
  Point point(std::vector<double> coords) const;
  bool contains(const Point& x) const;
  /// Throws SpaceMismatch unless x belongs to this pair.
  void check(const Point& x) const;

  double dist(const Point& x, const Point& y) const;
  double dist_to_A(const Point& x) const;
  /// Nearest point of A. Throws NoProjection when the kind has no projection oracle.
  Point project_to_A(const Point& x) const;
  /// Constant-speed geodesic from x (t = 0) to y (t = 1). Throws NoGeodesicOracle.
  Point geodesic(const Point& x, const Point& y, double t) const;

  /// FiniteExplicit only.
  std::size_t finite_size() const;
  const std::vector<std::size_t>& finite_a_points() const;

  nlohmann::json to_json() const;
  static MetricPair from_json(const nlohmann::json& j);

  friend bool operator==(const MetricPair& a, const MetricPair& b) { return a.id() == b.id(); }

 private:
  explicit MetricPair(std::shared_ptr<const detail::SpaceData> data);
  // Stamps the descriptor hash as the space id.
  static MetricPair seal(std::shared_ptr<detail::SpaceData> data);
  std::shared_ptr<const detail::SpaceData> data_;
};

/// Distance in X/A: min(d(x, y), d(x, A) + d(y, A)).
double quotient_distance(const MetricPair& pair, const Point& x, const Point& y);

/// Point on a constant-speed geodesic of X/A from [x] to [y]. Goes straight when
/// d(x, y) <= d(x, A) + d(y, A), otherwise through the nearest points of A.
/// Returns Basepoint when the resulting point lies in A.
QuotientPoint quotient_geodesic(const MetricPair& pair, const Point& x, const Point& y, double t);

/// Quotient distance with either argument allowed to be the basepoint.
double quotient_distance(const MetricPair& pair, const QuotientPoint& x, const QuotientPoint& y);

}  // namespace pdspace
