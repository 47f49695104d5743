#pragma once

// Hand-rolled generators for property tests. Every generator is driven by an explicit
// seed so failures replay with the printed seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pdspace/diagram.hpp"
#include "pdspace/metric_pair.hpp"

namespace gen {

using pdspace::Diagram;
using pdspace::MetricPair;
using pdspace::Norm;
using pdspace::Point;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }

  // Multiple of 1/denom in [lo, hi]. Sums and small powers of these stay exact.
  double dyadic(double lo, double hi, int denom = 8) {
    auto a = static_cast<long>(std::ceil(lo * denom));
    auto b = static_cast<long>(std::floor(hi * denom));
    return static_cast<double>(std::uniform_int_distribution<long>(a, b)(rng_)) / denom;
  }

  // (b, d) with b in [0, 10] and 0 < d - b <= 6; on the 1/8 grid when `grid` is set.
  Point plane_point(const MetricPair& pair, bool grid) {
    double b = grid ? dyadic(0.0, 10.0) : real(0.0, 10.0);
    double gap = grid ? dyadic(0.125, 6.0) : real(1e-3, 6.0);
    return pair.point({b, b + gap});
  }

  // n interleaved (b_i, d_i) pairs, each drawn like a plane point.
  Point half_plane_point(const MetricPair& pair, bool grid) {
    std::vector<double> c;
    for (std::size_t i = 0; i < pair.dim() / 2; ++i) {
      double b = grid ? dyadic(0.0, 10.0) : real(0.0, 10.0);
      double gap = grid ? dyadic(0.0, 6.0) : real(0.0, 6.0);
      c.push_back(b);
      c.push_back(b + gap);
    }
    return pair.point(c);
  }

  Point half_line_point(const MetricPair& pair, bool grid) { return pair.point({grid ? dyadic(0.125, 8.0) : real(1e-3, 8.0)}); }

  Point finite_point(const MetricPair& pair) {
    const auto& a = pair.finite_a_points();
    while (true) {
      std::size_t i = index(pair.finite_size());
      if (std::find(a.begin(), a.end(), i) == a.end()) return pair.point({static_cast<double>(i)});
    }
  }

  Point point(const MetricPair& pair, bool grid) {
    switch (pair.kind()) {
      case pdspace::SpaceKind::HalfLineOrigin: return half_line_point(pair, grid);
      case pdspace::SpaceKind::FiniteExplicit: return finite_point(pair);
      case pdspace::SpaceKind::HalfPlane2nDiagonal: return half_plane_point(pair, grid);
      case pdspace::SpaceKind::QuotientOf: return pair.point(point(*pair.inner(), grid).coords);
      default: return plane_point(pair, grid);
    }
  }

  // Up to max_points points counted with multiplicity; repeats are common.
  Diagram diagram(const MetricPair& pair, std::size_t max_points, bool grid = false) {
    std::size_t n = index(max_points + 1);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (!pts.empty() && coin(0.2)) {
        pts.push_back(pts[index(pts.size())]);
      } else {
        pts.push_back(point(pair, grid));
      }
    }
    return Diagram::canonicalize(pair, pts);
  }

  // Shortest-path metric of a random weighted complete graph; A is the first a_size points.
  MetricPair finite_space(std::size_t size, std::size_t a_size) {
    std::vector<std::vector<double>> d(size, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) d[i][j] = d[j][i] = dyadic(0.25, 4.0);
    }
    for (std::size_t k = 0; k < size; ++k) {
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
    std::vector<std::size_t> a(a_size);
    for (std::size_t i = 0; i < a_size; ++i) a[i] = i;
    return MetricPair::finite(std::move(d), std::move(a));
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
