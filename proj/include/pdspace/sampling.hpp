#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "pdspace/diagram.hpp"
#include "pdspace/metric_pair.hpp"

namespace pdspace {

using Rng = std::mt19937_64;

struct DiagramShape {
  std::size_t max_points = 5;
  /// Births are drawn from [0, extent].
  double extent = 10.0;
  /// Off-A distances are drawn from (0, max_height].
  double max_height = 5.0;
  /// Chance that a drawn point repeats an earlier one.
  double repeat_chance = 0.15;
};

/// A random off-A point. Supported for every kind except SupCubeTruncatedC0.
Point random_point(const MetricPair& pair, Rng& rng, const DiagramShape& shape = {});

/// A random diagram with up to shape.max_points points counted with multiplicity.
Diagram random_diagram(const MetricPair& pair, Rng& rng, const DiagramShape& shape = {});

/// Euclidean distances between `size` random points of the unit square, with the first
/// `a_size` points forming A.
MetricPair random_finite_space(Rng& rng, std::size_t size, std::size_t a_size);

/// `count` points of the annulus delta <= d(x, A) < D. Plane kinds spread births over
/// [0, extent]; the half-line and c0 truncations ignore extent. FiniteExplicit returns
/// every point of X in the annulus, ignoring count.
std::vector<Point> sample_annulus(const MetricPair& pair, double delta, double D, double extent, std::size_t count,
                                  Rng& rng);

}  // namespace pdspace
