#include "pdspace/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace pdspace {

GoodnessCertificate goodness(const MetricPair& pair, const Point& x, const QuotientPoint& y) {
  pair.check(x);
  GoodnessCertificate cert{x, y, false, GoodnessReason::NotGood};
  if (std::holds_alternative<Basepoint>(y)) {
    cert.verdict = true;
    cert.reason = GoodnessReason::BasepointTarget;
    return cert;
  }
  const Point& yp = std::get<Point>(y);
  pair.check(yp);
  if (pair.dist_to_A(yp) == 0.0) {
    // every point of A is the basepoint of X/A
    cert.verdict = true;
    cert.reason = GoodnessReason::BasepointTarget;
  } else if (quotient_distance(pair, x, yp) < pair.dist_to_A(x)) {
    cert.verdict = true;
    cert.reason = GoodnessReason::ClosePair;
  }
  return cert;
}

Diagram DiagramPath::at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("path parameter must lie in [0, 1]");
  std::vector<Point> pts;
  auto push = [&](const QuotientPoint& q) {
    if (const auto* p = std::get_if<Point>(&q)) pts.push_back(*p);
  };
  for (const auto& leg : legs_) {
    if (leg.route == Route::ThroughA) {
      push(quotient_geodesic(pair_, *leg.from, pair_.project_to_A(*leg.from), t));
      push(quotient_geodesic(pair_, pair_.project_to_A(*leg.to), *leg.to, t));
    } else if (leg.from && leg.to) {
      push(quotient_geodesic(pair_, *leg.from, *leg.to, t));
    } else if (leg.from) {
      push(quotient_geodesic(pair_, *leg.from, pair_.project_to_A(*leg.from), t));
    } else {
      push(quotient_geodesic(pair_, pair_.project_to_A(*leg.to), *leg.to, t));
    }
  }
  return Diagram::canonicalize(pair_, pts);
}

DiagramPath geodesic_between(const Diagram& sigma, const Diagram& tau, const MetricPair& pair,
                             const SolverOptions& options) {
  if (!pair.has_geodesic()) throw NoGeodesicOracle("no geodesic oracle for " + to_string(pair.kind()));
  if (!pair.has_projection()) throw NoGeodesicOracle("no projection onto A for " + to_string(pair.kind()));
  if (!pair.is_proper()) throw NotProper("geodesics between diagrams need a proper space");

  DistanceResult best = bottleneck(sigma, tau, pair, options);
  DiagramPath path(pair, sigma, tau);
  path.length_ = best.value;
  for (const auto& pr : best.matching.pairs) {
    PathLeg leg{pr.left, pr.right, Route::Direct, pr.cost};
    if (pr.left && pr.right) {
      double ax = pair.dist_to_A(*pr.left);
      double ay = pair.dist_to_A(*pr.right);
      // a pair no closer than its farther point is to A is cheaper to route through A
      if (pr.cost >= std::max(ax, ay)) leg.route = Route::ThroughA;
    }
    path.legs_.push_back(std::move(leg));
  }
  path.matching_ = std::move(best.matching);
  return path;
}

ProbeReport midpoint_check(const Diagram& sigma, const Diagram& tau, const MetricPair& pair, std::size_t grid,
                           double tolerance) {
  if (grid < 2) throw PreconditionViolated("midpoint grid needs at least the two endpoints");
  DiagramPath path = geodesic_between(sigma, tau, pair);
  const double length = path.length();
  ProbeReport report;
  report.probe = "midpoint-check";
  double worst = 0.0;
  for (std::size_t k = 0; k < grid; ++k) {
    double t = static_cast<double>(k) / static_cast<double>(grid - 1);
    Diagram rho = path.at(t);
    double from_source = std::abs(bottleneck(sigma, rho, pair).value - t * length);
    double to_target = std::abs(bottleneck(rho, tau, pair).value - (1.0 - t) * length);
    double dev = std::max(from_source, to_target);
    worst = std::max(worst, dev);
    report.trace.emplace_back(t, dev);
  }
  report.verdict = worst <= tolerance ? Verdict::Witnessed : Verdict::Refuted;
  report.witnesses = {{"length", length},
                      {"grid", grid},
                      {"tolerance", tolerance},
                      {"max_deviation", worst},
                      {"legs", path.legs().size()}};
  return report;
}

C0Diagrams c0_diagrams(std::size_t m) {
  if (m == 0) throw PreconditionViolated("c0 truncation needs m >= 1");
  if (m > kC0MaxDimension) {
    throw TooLarge("c0 truncation is capped at m = " + std::to_string(kC0MaxDimension));
  }
  MetricPair pair = MetricPair::c0_truncation(m);
  std::vector<Point> even, odd;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<double> coords(m, 0.0);
    for (std::size_t n = 1; n <= m; ++n) {
      if (mask & (std::size_t{1} << (n - 1))) coords[n - 1] = 1.0 + 1.0 / static_cast<double>(n);
    }
    (std::popcount(mask) % 2 == 0 ? even : odd).push_back(pair.point(std::move(coords)));
  }
  // the empty subset gives the zero vector, which canonicalization drops as a point of A
  Diagram even_d = Diagram::canonicalize(pair, even);
  Diagram odd_d = Diagram::canonicalize(pair, odd);
  return {pair, std::move(even_d), std::move(odd_d)};
}

ProbeReport c0_truncation_gap(std::size_t m) {
  C0Diagrams c0 = c0_diagrams(m);
  DistanceResult res = bottleneck(c0.even, c0.odd, c0.pair);

  double min_cross = std::numeric_limits<double>::infinity();
  for (const auto& x : c0.even.points()) {
    min_cross = std::min(min_cross, c0.pair.dist_to_A(x.point));
    for (const auto& y : c0.odd.points()) min_cross = std::min(min_cross, quotient_distance(c0.pair, x.point, y.point));
  }
  for (const auto& y : c0.odd.points()) min_cross = std::min(min_cross, c0.pair.dist_to_A(y.point));

  ProbeReport report;
  report.probe = "c0-gap";
  report.trace.emplace_back(static_cast<double>(m), res.value);
  const bool exceeds = min_cross > 1.0;
  report.verdict = (res.value > 1.0 && exceeds) ? Verdict::Witnessed : Verdict::Refuted;
  report.witnesses = {{"m", m},
                      {"value", res.value},
                      {"limit", 1.0},
                      {"gap", res.value - 1.0},
                      {"matching_cost", res.matching.bottleneck_cost},
                      {"min_cross_cost", min_cross},
                      {"all_cross_costs_exceed_one", exceeds},
                      {"points_per_side", {c0.even.size(), c0.odd.size()}}};
  return report;
}

}  // namespace pdspace
