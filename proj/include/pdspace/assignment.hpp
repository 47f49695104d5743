#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pdspace {

/// Dense row-major square cost matrix.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Minimum-cost perfect assignment (Hungarian method with potentials, O(n^3)).
/// Returns col[row], the column assigned to each row.
std::vector<std::size_t> solve_assignment(const CostMatrix& cost);

/// Maximum bipartite matching by Hopcroft-Karp. Vertices are scanned in index order and
/// adjacency lists in stored order, so the result is deterministic.
class BipartiteMatcher {
 public:
  static constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

  BipartiteMatcher(std::size_t left, std::size_t right) : adj_(left), right_(right) {}

  void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(v); }
  std::size_t left_size() const { return adj_.size(); }
  std::size_t right_size() const { return right_; }

  /// Runs the matcher; returns the matching size. match_left()[u] is u's partner or kUnmatched.
  std::size_t solve();
  std::span<const std::size_t> match_left() const { return match_left_; }

 private:
  bool bfs();
  bool dfs(std::size_t u);

  std::vector<std::vector<std::size_t>> adj_;
  std::size_t right_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> layer_;
  std::vector<std::size_t> cursor_;
};

}  // namespace pdspace
