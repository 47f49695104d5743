#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pdspace/diagram.hpp"
#include "pdspace/matching.hpp"
#include "pdspace/metric_pair.hpp"
#include "pdspace/report.hpp"

namespace pdspace {

/// Checks d_inf(sigma, tau) >= eps for sigma != tau over a finite pair, where eps is the
/// smallest isolation radius min(d(x, X \ {x}), d(x, A)) over points whose multiplicities differ.
ProbeReport isolated_point_bound(const MetricPair& pair, const Diagram& sigma, const Diagram& tau);

/// x_n for n >= 1; nullopt once the generator runs out.
using PointSequence = std::function<std::optional<Point>(std::size_t)>;

/// Traces d_inf({x_1..x_N, x}, {x_1..x_N, x_{N+1}}) for N = 1..n_max against the single-swap
/// cost d(x, x_{N+1}). Witnessed when every bound holds and the last value is below epsilon.
ProbeReport vanishing_pair_demo(const MetricPair& pair, const Point& limit, const PointSequence& sequence,
                                std::size_t n_max, double epsilon = 0.05);

struct CauchyLimit {
  Diagram limit;
  ProbeReport report;
};

inline constexpr double kTrajectoryTolerance = 1e-6;

/// Limit of a Cauchy sequence of finite diagrams, found by composing optimal matchings along
/// the subsequence N_k (the first index whose tail has diameter <= 2^-k). Throws NotCauchy
/// when fewer than three levels fit in the sequence.
CauchyLimit cauchy_chain_limit(std::span<const Diagram> sequence, const MetricPair& pair,
                               double tolerance = kTrajectoryTolerance);

struct EpsNet {
  double epsilon = 0.0;
  std::vector<Point> centers;
  double delta = 0.0;
  double D = 0.0;
  /// Samples that fell inside the annulus.
  std::size_t covered = 0;
};

/// Greedy farthest-point net of the samples lying in delta <= d(x, A) < D. Centers are
/// pairwise >= epsilon apart and every such sample is within epsilon of a center.
EpsNet greedy_eps_net(const MetricPair& pair, double delta, double D, double epsilon, std::span<const Point> samples);

/// Net sizes over growing sample extents. Refuted when every doubling grows the net by at
/// least half, inconclusive otherwise; total boundedness itself is never witnessed.
ProbeReport net_growth_probe(const MetricPair& pair, double delta, double D, double epsilon, std::uint64_t seed,
                             std::span<const double> extents, std::size_t samples_per_unit = 100);

/// Net of the half-line annulus [1/n, n) at radius 1/n: centers at odd multiples of 1/(2n).
EpsNet half_line_net(std::size_t n);

struct DenseFamily {
  std::size_t n = 0;
  /// Level-n net centers in canonical order.
  std::vector<Point> centers;
};

/// Level-n family from a net of B_n(A) \ B_{1/n}(A). Every sample in that annulus must lie
/// within 1/n of a center, otherwise CoverageGap.
DenseFamily dense_family(const MetricPair& pair, std::size_t n, const EpsNet& net,
                         std::span<const Point> samples = {});

struct Approximation {
  Diagram approximant;
  double distance = 0.0;
};

/// Drops points with d(x, A) < 1/n and snaps the rest to their nearest center, ties going
/// to the lexicographically smallest. The returned distance is computed by the solver.
Approximation approximate_from_family(const Diagram& sigma, const DenseFamily& family, const MetricPair& pair);

struct Adversary {
  Diagram tau;
  ProbeReport report;
};

/// tau contains x_i iff every point of candidate i is at distance >= eps/2 from x_i; the solver
/// then checks d_inf(tau, sigma_i) >= eps/2 for every candidate.
Adversary separability_adversary(const MetricPair& pair, std::span<const Diagram> candidates, double delta, double D,
                                 double epsilon, std::span<const Point> separated_points);

}  // namespace pdspace
