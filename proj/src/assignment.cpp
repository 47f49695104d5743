#include "pdspace/assignment.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace pdspace {

std::vector<std::size_t> solve_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual root of each augmenting search
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = row_of[j0];
      std::size_t j1 = 0;
      double delta = kInf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of(n);
  for (std::size_t j = 1; j <= n; ++j) col_of[row_of[j] - 1] = j - 1;
  return col_of;
}

std::size_t BipartiteMatcher::solve() {
  const std::size_t left = adj_.size();
  match_left_.assign(left, kUnmatched);
  match_right_.assign(right_, kUnmatched);
  layer_.assign(left, 0);
  cursor_.assign(left, 0);
  std::size_t size = 0;
  while (bfs()) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    for (std::size_t u = 0; u < left; ++u) {
      if (match_left_[u] == kUnmatched && dfs(u)) ++size;
    }
  }
  return size;
}

bool BipartiteMatcher::bfs() {
  constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();
  std::queue<std::size_t> queue;
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    if (match_left_[u] == kUnmatched) {
      layer_[u] = 0;
      queue.push(u);
    } else {
      layer_[u] = kFar;
    }
  }
  bool found = false;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adj_[u]) {
      std::size_t w = match_right_[v];
      if (w == kUnmatched) {
        found = true;
      } else if (layer_[w] == kFar) {
        layer_[w] = layer_[u] + 1;
        queue.push(w);
      }
    }
  }
  return found;
}

bool BipartiteMatcher::dfs(std::size_t u) {
  // recursion depth is bounded by the number of BFS layers
  for (std::size_t& k = cursor_[u]; k < adj_[u].size(); ++k) {
    std::size_t v = adj_[u][k];
    std::size_t w = match_right_[v];
    if (w == kUnmatched || (layer_[w] == layer_[u] + 1 && dfs(w))) {
      match_left_[u] = v;
      match_right_[v] = u;
      ++k;
      return true;
    }
  }
  layer_[u] = std::numeric_limits<std::size_t>::max();
  return false;
}

}  // namespace pdspace
