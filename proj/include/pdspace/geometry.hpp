#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdspace/diagram.hpp"
#include "pdspace/matching.hpp"
#include "pdspace/metric_pair.hpp"
#include "pdspace/report.hpp"

namespace pdspace {

enum class GoodnessReason { ClosePair, BasepointTarget, NotGood };

/// Whether x, y in X/A are "good": d(x, y) < d(x, A), or y is the basepoint.
struct GoodnessCertificate {
  Point x;
  QuotientPoint y;
  bool verdict = false;
  GoodnessReason reason = GoodnessReason::NotGood;
};

GoodnessCertificate goodness(const MetricPair& pair, const Point& x, const QuotientPoint& y);

enum class Route { Direct, ThroughA };

/// One matched pair of the optimal matching and how the path moves it.
///
/// Direct legs follow the quotient geodesic from `from` to `to` (an empty side is A,
/// reached through the nearest point). ThroughA legs send `from` and `to` separately
/// to A, each along its own lifted geodesic.
struct PathLeg {
  std::optional<Point> from;
  std::optional<Point> to;
  Route route = Route::Direct;
  double cost = 0.0;
};

/// A constant-speed geodesic in D_inf(X, A) built from an optimal bottleneck matching.
class DiagramPath {
 public:
  const Diagram& source() const { return source_; }
  const Diagram& target() const { return target_; }
  const Matching& matching() const { return matching_; }
  const std::vector<PathLeg>& legs() const { return legs_; }
  /// d_inf(source, target).
  double length() const { return length_; }

  /// The diagram at parameter t in [0, 1]; source at 0 and target at 1.
  Diagram at(double t) const;

 private:
  friend DiagramPath geodesic_between(const Diagram&, const Diagram&, const MetricPair&, const SolverOptions&);
  DiagramPath(MetricPair pair, Diagram source, Diagram target)
      : pair_(std::move(pair)), source_(std::move(source)), target_(std::move(target)) {}

  MetricPair pair_;
  Diagram source_;
  Diagram target_;
  Matching matching_;
  std::vector<PathLeg> legs_;
  double length_ = 0.0;
};

/// Geodesic between two finite diagrams. Throws NoGeodesicOracle or NotProper when the
/// pair cannot lift geodesics through A.
DiagramPath geodesic_between(const Diagram& sigma, const Diagram& tau, const MetricPair& pair,
                             const SolverOptions& options = {});

/// Checks |d_inf(sigma, xi(t)) - t d| and |d_inf(xi(t), tau) - (1 - t) d| on a uniform grid
/// of `grid` parameters (grid >= 2, endpoints included).
ProbeReport midpoint_check(const Diagram& sigma, const Diagram& tau, const MetricPair& pair, std::size_t grid,
                           double tolerance = 1e-9);

inline constexpr std::size_t kC0MaxDimension = 12;

/// Diagrams sigma_+ / sigma_- of indicator-like vectors over subsets of {1..m} with even /
/// odd cardinality, coordinate n set to 1 + 1/n on the subset.
struct C0Diagrams {
  MetricPair pair;
  Diagram even;
  Diagram odd;
};

C0Diagrams c0_diagrams(std::size_t m);

/// Exact d_inf(sigma_+, sigma_-) in the m-coordinate truncation of c_0, with the cross-cost
/// check against the infinite-dimensional value 1. Throws TooLarge for m > 12.
ProbeReport c0_truncation_gap(std::size_t m);

}  // namespace pdspace
