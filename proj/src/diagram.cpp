#include "pdspace/diagram.hpp"

#include <algorithm>
#include <cmath>

namespace pdspace {

Diagram::Diagram(const MetricPair& pair) : space_id_(pair.id()) {}

Diagram::Diagram(SpaceId id, std::vector<DiagramPoint> points) : space_id_(id), points_(std::move(points)) {
  for (const auto& p : points_) total_ += p.mult;
}

Diagram Diagram::canonicalize(const MetricPair& pair, std::vector<DiagramPoint> raw) {
  std::vector<DiagramPoint> kept;
  kept.reserve(raw.size());
  for (auto& entry : raw) {
    pair.check(entry.point);
    if (entry.mult == 0) continue;
    if (pair.dist_to_A(entry.point) == 0.0) continue;
    kept.push_back(std::move(entry));
  }
  std::sort(kept.begin(), kept.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    return std::lexicographical_compare(a.point.coords.begin(), a.point.coords.end(), b.point.coords.begin(),
                                        b.point.coords.end());
  });
  std::vector<DiagramPoint> merged;
  for (auto& entry : kept) {
    if (!merged.empty() && merged.back().point.coords == entry.point.coords) {
      merged.back().mult += entry.mult;
    } else {
      merged.push_back(std::move(entry));
    }
  }
  return Diagram(pair.id(), std::move(merged));
}

Diagram Diagram::canonicalize(const MetricPair& pair, const std::vector<Point>& raw) {
  std::vector<DiagramPoint> entries;
  entries.reserve(raw.size());
  for (const auto& p : raw) entries.push_back({p, 1});
  return canonicalize(pair, std::move(entries));
}

std::vector<Point> Diagram::expanded() const {
  std::vector<Point> out;
  out.reserve(total_);
  for (const auto& p : points_) {
    for (std::size_t k = 0; k < p.mult; ++k) out.push_back(p.point);
  }
  return out;
}

Diagram Diagram::to_quotient(const MetricPair& quotient) const {
  if (quotient.kind() != SpaceKind::QuotientOf || quotient.inner()->id() != space_id_) {
    throw SpaceMismatch("target is not the quotient of this diagram's space");
  }
  std::vector<DiagramPoint> pts = points_;
  for (auto& p : pts) p.point.space_id = quotient.id();
  return Diagram(quotient.id(), std::move(pts));
}

ExtendedDistance total_persistence(const Diagram& sigma, Exponent p, const MetricPair& pair) {
  if (sigma.space_id() != pair.id()) throw SpaceMismatch("diagram belongs to a different metric pair");
  if (p.is_infinite()) {
    double best = 0.0;
    for (const auto& entry : sigma.points()) best = std::max(best, pair.dist_to_A(entry.point));
    return ExtendedDistance(best);
  }
  std::vector<double> terms;
  for (const auto& entry : sigma.points()) {
    double term = std::pow(pair.dist_to_A(entry.point), p.value());
    for (std::size_t k = 0; k < entry.mult; ++k) terms.push_back(term);
  }
  // ascending summation, matching the order used for matching costs
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return ExtendedDistance(std::pow(sum, 1.0 / p.value()));
}

}  // namespace pdspace
