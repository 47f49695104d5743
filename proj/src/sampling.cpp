#include "pdspace/sampling.hpp"

#include <cmath>

namespace pdspace {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Gap d - b whose distance to the diagonal is r.
double gap_for(Norm norm, double r) { return norm == Norm::Sup ? 2.0 * r : std::sqrt(2.0) * r; }

std::vector<double> plane_coords(const MetricPair& pair, Rng& rng, double extent, double r) {
  std::vector<double> c(pair.dim());
  double b = uniform(rng, 0.0, extent);
  c[0] = b;
  c[1] = b + gap_for(pair.norm(), r);
  for (std::size_t i = 2; i + 1 < c.size(); i += 2) {
    double bi = uniform(rng, 0.0, extent);
    c[i] = bi;
    c[i + 1] = bi;
  }
  return c;
}

}  // namespace

Point random_point(const MetricPair& pair, Rng& rng, const DiagramShape& shape) {
  // (0, max_height]
  const double h = shape.max_height * (1.0 - uniform(rng, 0.0, 1.0));
  switch (pair.kind()) {
    case SpaceKind::EuclideanPlaneDiagonal: return pair.point(plane_coords(pair, rng, shape.extent, h));
    case SpaceKind::HalfPlane2nDiagonal: {
      std::vector<double> c(pair.dim());
      for (std::size_t i = 0; i < c.size(); i += 2) {
        c[i] = uniform(rng, 0.0, shape.extent);
        c[i + 1] = c[i] + (i == 0 ? gap_for(pair.norm(), h) : uniform(rng, 0.0, shape.max_height));
      }
      return pair.point(std::move(c));
    }
    case SpaceKind::HalfLineOrigin: return pair.point({h});
    case SpaceKind::FiniteExplicit: {
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < pair.finite_size(); ++i) {
        if (pair.dist_to_A(pair.point({static_cast<double>(i)})) > 0.0) free.push_back(i);
      }
      if (free.empty()) throw PreconditionViolated("every point of the finite space lies in A");
      std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
      return pair.point({static_cast<double>(free[pick(rng)])});
    }
    case SpaceKind::SupCubeTruncatedC0: {
      std::vector<double> c(pair.dim());
      for (auto& v : c) v = uniform(rng, -shape.max_height, shape.max_height);
      c[0] = h;
      return pair.point(std::move(c));
    }
    case SpaceKind::QuotientOf: return pair.point(random_point(*pair.inner(), rng, shape).coords);
  }
  throw InvalidSpace("unknown space kind");
}

Diagram random_diagram(const MetricPair& pair, Rng& rng, const DiagramShape& shape) {
  std::size_t count = std::uniform_int_distribution<std::size_t>(0, shape.max_points)(rng);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!pts.empty() && uniform(rng, 0.0, 1.0) < shape.repeat_chance) {
      pts.push_back(pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)]);
    } else {
      pts.push_back(random_point(pair, rng, shape));
    }
  }
  return Diagram::canonicalize(pair, pts);
}

MetricPair random_finite_space(Rng& rng, std::size_t size, std::size_t a_size) {
  if (a_size == 0 || a_size > size) throw PreconditionViolated("need 1 <= |A| <= |X|");
  std::vector<std::pair<double, double>> xy(size);
  for (auto& [x, y] : xy) {
    x = uniform(rng, 0.0, 1.0);
    y = uniform(rng, 0.0, 1.0);
  }
  std::vector<std::vector<double>> m(size, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      m[i][j] = m[j][i] = std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second);
    }
  }
  std::vector<std::size_t> a(a_size);
  for (std::size_t i = 0; i < a_size; ++i) a[i] = i;
  return MetricPair::finite(std::move(m), std::move(a));
}

std::vector<Point> sample_annulus(const MetricPair& pair, double delta, double D, double extent, std::size_t count,
                                  Rng& rng) {
  if (!(delta >= 0.0 && delta < D)) throw PreconditionViolated("annulus needs 0 <= delta < D");
  std::vector<Point> out;
  auto inside = [&](const Point& x) {
    double r = pair.dist_to_A(x);
    return r >= delta && r < D;
  };
  if (pair.kind() == SpaceKind::FiniteExplicit) {
    for (std::size_t i = 0; i < pair.finite_size(); ++i) {
      Point x = pair.point({static_cast<double>(i)});
      if (inside(x)) out.push_back(std::move(x));
    }
    return out;
  }
  if (pair.kind() == SpaceKind::QuotientOf) {
    for (auto& x : sample_annulus(*pair.inner(), delta, D, extent, count, rng)) out.push_back(pair.point(x.coords));
    return out;
  }
  out.reserve(count);
  while (out.size() < count) {
    Point x;
    switch (pair.kind()) {
      case SpaceKind::EuclideanPlaneDiagonal:
      case SpaceKind::HalfPlane2nDiagonal: x = pair.point(plane_coords(pair, rng, extent, uniform(rng, delta, D))); break;
      case SpaceKind::HalfLineOrigin: x = pair.point({uniform(rng, delta, D)}); break;
      default: {
        std::vector<double> c(pair.dim());
        for (auto& v : c) v = uniform(rng, -D, D);
        x = pair.point(std::move(c));
      }
    }
    // rounding in the gap can land just outside the annulus
    if (inside(x)) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace pdspace
