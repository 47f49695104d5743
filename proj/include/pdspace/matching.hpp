#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdspace/diagram.hpp"
#include "pdspace/extended_distance.hpp"
#include "pdspace/metric_pair.hpp"

namespace pdspace {

/// One pairing of a matching. An empty side stands for a copy of A.
struct MatchedPair {
  std::optional<Point> left;
  std::optional<Point> right;
  double cost = 0.0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// A bijection between two A-augmented diagrams. A<->A pairs are never stored.
///
/// Point-to-point pairs are kept only when they are cheaper than sending both points
/// to A; otherwise they are reported as two A-pairs. Every stored cost is therefore
/// either d(x, y) = d_{X/A}(x, y) or d(x, A).
struct Matching {
  std::vector<MatchedPair> pairs;
  Exponent p = Exponent::infinity();
  double bottleneck_cost = 0.0;
  /// Sum of cost^p, accumulated in ascending order. Zero when p is infinite.
  double sum_cost_p = 0.0;

  /// bottleneck_cost for p = inf, sum_cost_p^(1/p) otherwise.
  double value() const;
};

struct DistanceResult {
  double value = 0.0;
  Matching matching;
};

struct SolverOptions {
  /// Cap on |sigma| + |tau| counted with multiplicity.
  std::size_t max_nodes = 10000;
};

/// {d_{X/A}(x, y)} u {d(x, A)} u {d(y, A)} u {0}, sorted and deduplicated.
std::vector<double> candidate_thresholds(const Diagram& sigma, const Diagram& tau, const MetricPair& pair);

/// A matching of the augmented diagrams with every cost <= r, if one exists.
std::optional<Matching> feasible_at_threshold(const Diagram& sigma, const Diagram& tau, const MetricPair& pair,
                                              double r, const SolverOptions& options = {});

/// Exact bottleneck distance by binary search over candidate_thresholds.
DistanceResult bottleneck(const Diagram& sigma, const Diagram& tau, const MetricPair& pair,
                          const SolverOptions& options = {});

/// Exact p-Wasserstein distance by min-cost assignment on the augmented matrix.
DistanceResult wasserstein(const Diagram& sigma, const Diagram& tau, double p, const MetricPair& pair,
                           const SolverOptions& options = {});

/// Dispatches on p: bottleneck for p = inf, wasserstein otherwise.
DistanceResult distance(const Diagram& sigma, const Diagram& tau, Exponent p, const MetricPair& pair,
                        const SolverOptions& options = {});

/// Size cap for brute_force_dp, counted with multiplicity.
inline constexpr std::size_t kBruteForceMaxPoints = 10;

/// Reference value of d_p by enumerating every bijection of the augmented multisets,
/// using the ambient metric d(x, y) and d(x, A) directly. Throws TooLarge above the cap.
double brute_force_dp(const Diagram& sigma, const Diagram& tau, Exponent p, const MetricPair& pair);

/// {"pairs": [{"left": [...] | "A", "right": [...] | "A", "cost": c}], "value": v, "p": p | "inf"}
nlohmann::json matching_to_json(const Matching& matching);

}  // namespace pdspace
