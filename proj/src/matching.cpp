#include "pdspace/matching.hpp"

#include <algorithm>
#include <cmath>

#include "pdspace/assignment.hpp"

namespace pdspace {

namespace {

// Expanded solver instance: one node per point copy, distances cached per distinct pair.
struct Instance {
  std::vector<Point> xs, ys;
  std::vector<std::size_t> xu, yu;  // distinct-point index of each copy
  std::vector<double> ax_u, ay_u;    // d(., A) per distinct point
  std::vector<double> d_u, q_u;      // ambient and quotient distance, distinct x-major

  std::size_t n() const { return xs.size(); }
  std::size_t m() const { return ys.size(); }
  std::size_t stride() const { return ay_u.size(); }
  double ax(std::size_t i) const { return ax_u[xu[i]]; }
  double ay(std::size_t j) const { return ay_u[yu[j]]; }
  double d(std::size_t i, std::size_t j) const { return d_u[xu[i] * stride() + yu[j]]; }
  double q(std::size_t i, std::size_t j) const { return q_u[xu[i] * stride() + yu[j]]; }
};

void check_same_space(const Diagram& sigma, const Diagram& tau, const MetricPair& pair) {
  if (sigma.space_id() != pair.id() || tau.space_id() != pair.id()) {
    throw SpaceMismatch("diagrams must both belong to the given metric pair");
  }
}

Instance build_instance(const Diagram& sigma, const Diagram& tau, const MetricPair& pair, std::size_t max_nodes) {
  check_same_space(sigma, tau, pair);
  if (sigma.size() + tau.size() > max_nodes) {
    throw TooLarge("diagrams have " + std::to_string(sigma.size() + tau.size()) + " points, solver cap is " +
                   std::to_string(max_nodes));
  }
  Instance inst;
  for (std::size_t k = 0; k < sigma.distinct(); ++k) {
    const auto& e = sigma.points()[k];
    inst.ax_u.push_back(pair.dist_to_A(e.point));
    for (std::size_t c = 0; c < e.mult; ++c) {
      inst.xs.push_back(e.point);
      inst.xu.push_back(k);
    }
  }
  for (std::size_t k = 0; k < tau.distinct(); ++k) {
    const auto& e = tau.points()[k];
    inst.ay_u.push_back(pair.dist_to_A(e.point));
    for (std::size_t c = 0; c < e.mult; ++c) {
      inst.ys.push_back(e.point);
      inst.yu.push_back(k);
    }
  }
  inst.d_u.resize(sigma.distinct() * tau.distinct());
  inst.q_u.resize(sigma.distinct() * tau.distinct());
  for (std::size_t a = 0; a < sigma.distinct(); ++a) {
    for (std::size_t b = 0; b < tau.distinct(); ++b) {
      double d = pair.dist(sigma.points()[a].point, tau.points()[b].point);
      inst.d_u[a * tau.distinct() + b] = d;
      inst.q_u[a * tau.distinct() + b] = std::min(d, inst.ax_u[a] + inst.ay_u[b]);
    }
  }
  return inst;
}

double ascending_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

void finalize(Matching& m) {
  m.bottleneck_cost = 0.0;
  for (const auto& pr : m.pairs) m.bottleneck_cost = std::max(m.bottleneck_cost, pr.cost);
  if (m.p.is_infinite()) {
    m.sum_cost_p = 0.0;
    return;
  }
  std::vector<double> terms;
  terms.reserve(m.pairs.size());
  for (const auto& pr : m.pairs) terms.push_back(std::pow(pr.cost, m.p.value()));
  m.sum_cost_p = ascending_sum(std::move(terms));
}

// Converts a perfect assignment of the augmented problem (left: sigma copies then tau's
// A-slots; right: tau copies then sigma's A-slots) into a Matching.
Matching to_matching(const Instance& inst, const std::vector<std::size_t>& partner, Exponent p) {
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  Matching out;
  out.p = p;
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t v = partner[u];
    if (v < m) {
      if (inst.d(u, v) >= inst.ax(u) + inst.ay(v)) {
        // the quotient route: both points are absorbed by A
        out.pairs.push_back({inst.xs[u], std::nullopt, inst.ax(u)});
        out.pairs.push_back({std::nullopt, inst.ys[v], inst.ay(v)});
      } else {
        out.pairs.push_back({inst.xs[u], inst.ys[v], inst.d(u, v)});
      }
    } else {
      out.pairs.push_back({inst.xs[u], std::nullopt, inst.ax(u)});
    }
  }
  for (std::size_t u = n; u < n + m; ++u) {
    std::size_t v = partner[u];
    if (v < m) out.pairs.push_back({std::nullopt, inst.ys[v], inst.ay(v)});
  }
  finalize(out);
  return out;
}

std::optional<Matching> feasible(const Instance& inst, double r) {
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  BipartiteMatcher matcher(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (inst.q(i, j) <= r) matcher.add_edge(i, j);
    }
    // A-slots are interchangeable, so each point only needs its own copy of A
    if (inst.ax(i) <= r) matcher.add_edge(i, m + i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (inst.ay(j) <= r) matcher.add_edge(n + j, j);
    for (std::size_t i = 0; i < n; ++i) matcher.add_edge(n + j, m + i);
  }
  if (matcher.solve() != n + m) return std::nullopt;
  std::vector<std::size_t> partner(matcher.match_left().begin(), matcher.match_left().end());
  return to_matching(inst, partner, Exponent::infinity());
}

}  // namespace

double Matching::value() const {
  if (p.is_infinite()) return bottleneck_cost;
  return std::pow(sum_cost_p, 1.0 / p.value());
}

std::vector<double> candidate_thresholds(const Diagram& sigma, const Diagram& tau, const MetricPair& pair) {
  check_same_space(sigma, tau, pair);
  std::vector<double> out{0.0};
  std::vector<double> ay;
  for (const auto& y : tau.points()) ay.push_back(pair.dist_to_A(y.point));
  out.insert(out.end(), ay.begin(), ay.end());
  for (const auto& x : sigma.points()) {
    double ax = pair.dist_to_A(x.point);
    out.push_back(ax);
    for (std::size_t b = 0; b < tau.distinct(); ++b) {
      out.push_back(std::min(pair.dist(x.point, tau.points()[b].point), ax + ay[b]));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Matching> feasible_at_threshold(const Diagram& sigma, const Diagram& tau, const MetricPair& pair,
                                              double r, const SolverOptions& options) {
  return feasible(build_instance(sigma, tau, pair, options.max_nodes), r);
}

DistanceResult bottleneck(const Diagram& sigma, const Diagram& tau, const MetricPair& pair,
                          const SolverOptions& options) {
  const Instance inst = build_instance(sigma, tau, pair, options.max_nodes);
  const std::vector<double> candidates = candidate_thresholds(sigma, tau, pair);
  // the largest candidate is at least every d(x, A), so sending everything to A is feasible there
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  std::optional<Matching> best = feasible(inst, candidates[hi]);
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (auto witness = feasible(inst, candidates[mid])) {
      hi = mid;
      best = std::move(witness);
    } else {
      lo = mid + 1;
    }
  }
  return {candidates[hi], std::move(*best)};
}

DistanceResult wasserstein(const Diagram& sigma, const Diagram& tau, double p, const MetricPair& pair,
                           const SolverOptions& options) {
  Exponent exponent(p);
  if (exponent.is_infinite()) return bottleneck(sigma, tau, pair, options);
  const Instance inst = build_instance(sigma, tau, pair, options.max_nodes);
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  CostMatrix cost(n + m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) cost(i, j) = std::pow(inst.q(i, j), p);
    double to_a = std::pow(inst.ax(i), p);
    for (std::size_t k = 0; k < n; ++k) cost(i, m + k) = to_a;
  }
  // rows n.. are A-slots for tau: any of them takes any tau point at that point's A-cost,
  // and pairs with sigma's A-slots for free
  for (std::size_t j = 0; j < m; ++j) {
    double to_a = std::pow(inst.ay(j), p);
    for (std::size_t k = 0; k < m; ++k) cost(n + k, j) = to_a;
  }
  Matching matching = to_matching(inst, solve_assignment(cost), exponent);
  return {matching.value(), std::move(matching)};
}

DistanceResult distance(const Diagram& sigma, const Diagram& tau, Exponent p, const MetricPair& pair,
                        const SolverOptions& options) {
  if (p.is_infinite()) return bottleneck(sigma, tau, pair, options);
  return wasserstein(sigma, tau, p.value(), pair, options);
}

nlohmann::json matching_to_json(const Matching& matching) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& pr : matching.pairs) {
    nlohmann::json entry;
    entry["left"] = pr.left ? nlohmann::json(pr.left->coords) : nlohmann::json("A");
    entry["right"] = pr.right ? nlohmann::json(pr.right->coords) : nlohmann::json("A");
    entry["cost"] = pr.cost;
    pairs.push_back(std::move(entry));
  }
  nlohmann::json j;
  j["pairs"] = std::move(pairs);
  j["value"] = matching.value();
  j["p"] = matching.p.is_infinite() ? nlohmann::json("inf") : nlohmann::json(matching.p.value());
  return j;
}

}  // namespace pdspace
