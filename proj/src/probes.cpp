#include "pdspace/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "pdspace/sampling.hpp"

namespace pdspace {

namespace {

bool is_finite_kind(const MetricPair& pair) {
  const MetricPair* p = &pair;
  while (p->kind() == SpaceKind::QuotientOf) p = p->inner();
  return p->kind() == SpaceKind::FiniteExplicit;
}

nlohmann::json points_json(std::span<const Point> pts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : pts) out.push_back(x.coords);
  return out;
}

}  // namespace

ProbeReport isolated_point_bound(const MetricPair& pair, const Diagram& sigma, const Diagram& tau) {
  if (pair.kind() != SpaceKind::FiniteExplicit) {
    throw PreconditionViolated("isolated-point bound needs a FiniteExplicit pair");
  }
  if (sigma.space_id() != pair.id() || tau.space_id() != pair.id()) {
    throw SpaceMismatch("diagrams must both belong to the given metric pair");
  }
  if (sigma == tau) throw PreconditionViolated("isolated-point bound needs sigma != tau");

  std::map<Point, std::pair<std::size_t, std::size_t>> mult;
  for (const auto& x : sigma.points()) mult[x.point].first = x.mult;
  for (const auto& y : tau.points()) mult[y.point].second = y.mult;

  ProbeReport report;
  report.probe = "isolated-bound";
  double eps = std::numeric_limits<double>::infinity();
  nlohmann::json differing = nlohmann::json::array();
  for (const auto& [x, m] : mult) {
    if (m.first == m.second) continue;
    double radius = pair.dist_to_A(x);
    for (std::size_t z = 0; z < pair.finite_size(); ++z) {
      if (static_cast<double>(z) == x.coords[0]) continue;
      radius = std::min(radius, pair.dist(x, pair.point({static_cast<double>(z)})));
    }
    eps = std::min(eps, radius);
    differing.push_back(x.coords[0]);
    report.trace.emplace_back(x.coords[0], radius);
  }
  const double d = bottleneck(sigma, tau, pair).value;
  report.verdict = d >= eps ? Verdict::Witnessed : Verdict::Refuted;
  report.witnesses = {{"epsilon", eps}, {"distance", d}, {"differing_points", differing}};
  return report;
}

ProbeReport vanishing_pair_demo(const MetricPair& pair, const Point& limit, const PointSequence& sequence,
                                std::size_t n_max, double epsilon) {
  if (is_finite_kind(pair)) throw PreconditionViolated("vanishing pairs need a non-discrete space");
  if (n_max == 0) throw PreconditionViolated("vanishing-pair trace needs N_max >= 1");
  pair.check(limit);

  std::vector<Point> xs;
  for (std::size_t n = 1; n <= n_max + 1; ++n) {
    std::optional<Point> x = sequence(n);
    if (!x) throw PreconditionViolated("point sequence exhausted at n = " + std::to_string(n));
    pair.check(*x);
    if (*x == limit) throw PreconditionViolated("sequence points must differ from the limit");
    xs.push_back(std::move(*x));
  }

  ProbeReport report;
  report.probe = "vanishing-pair";
  bool bounded = true;
  nlohmann::json bounds = nlohmann::json::array();
  for (std::size_t N = 1; N <= n_max; ++N) {
    std::vector<Point> s(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(N));
    std::vector<Point> t = s;
    s.push_back(limit);
    t.push_back(xs[N]);
    Diagram sigma = Diagram::canonicalize(pair, s);
    Diagram tau = Diagram::canonicalize(pair, t);
    if (sigma == tau) throw PreconditionViolated("sigma_N and tau_N coincide at N = " + std::to_string(N));
    const double d = bottleneck(sigma, tau, pair).value;
    const double swap = pair.dist(limit, xs[N]);
    bounded = bounded && d <= swap;
    bounds.push_back(swap);
    report.trace.emplace_back(static_cast<double>(N), d);
  }
  const double last = report.trace.back().second;
  if (!bounded) {
    report.verdict = Verdict::Refuted;
  } else {
    report.verdict = last < epsilon ? Verdict::Witnessed : Verdict::Inconclusive;
  }
  report.witnesses = {{"single_swap_bounds", bounds},
                      {"bounded", bounded},
                      {"final", last},
                      {"epsilon", epsilon},
                      {"limit", limit.coords}};
  return report;
}

CauchyLimit cauchy_chain_limit(std::span<const Diagram> sequence, const MetricPair& pair, double tolerance) {
  const std::size_t L = sequence.size();
  if (L < 2) throw NotCauchy("a Cauchy envelope needs at least two diagrams");
  for (const auto& s : sequence) {
    if (s.space_id() != pair.id()) throw SpaceMismatch("sequence diagrams must belong to the given metric pair");
  }

  std::vector<std::vector<double>> dist(L, std::vector<double>(L, 0.0));
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = a + 1; b < L; ++b) dist[a][b] = dist[b][a] = bottleneck(sequence[a], sequence[b], pair).value;
  }
  // tail[i] = diameter of {sigma_i, ..., sigma_{L-1}}
  std::vector<double> tail(L, 0.0);
  for (std::size_t i = L; i-- > 0;) {
    tail[i] = i + 1 < L ? tail[i + 1] : 0.0;
    for (std::size_t b = i + 1; b < L; ++b) tail[i] = std::max(tail[i], dist[i][b]);
  }

  constexpr int kMaxLevel = 60;
  std::vector<std::size_t> levels;
  for (int k = 0; k <= kMaxLevel; ++k) {
    const double radius = std::ldexp(1.0, -k);
    std::size_t n = levels.empty() ? 0 : levels.back();
    while (n < L && tail[n] > radius) ++n;
    if (n + 2 > L) break;
    levels.push_back(n);
  }
  if (levels.size() < 3) {
    throw NotCauchy("the sequence does not reach the 2^-2 envelope before its last element");
  }

  std::vector<std::size_t> stages(levels.begin(), levels.end());
  stages.push_back(L - 1);
  stages.erase(std::unique(stages.begin(), stages.end()), stages.end());

  // strand positions per stage; nullopt once the strand sits in A
  std::vector<std::vector<std::optional<Point>>> strands;
  std::map<Point, std::vector<std::size_t>> at;
  for (const auto& x : sequence[stages[0]].expanded()) {
    at[x].push_back(strands.size());
    strands.push_back({x});
  }
  for (std::size_t s = 1; s < stages.size(); ++s) {
    const Matching m = bottleneck(sequence[stages[s - 1]], sequence[stages[s]], pair).matching;
    std::vector<std::optional<Point>> next(strands.size());
    std::map<Point, std::vector<std::size_t>> next_at;
    for (const auto& pr : m.pairs) {
      std::size_t id;
      if (pr.left) {
        auto& bucket = at.at(*pr.left);
        id = bucket.back();
        bucket.pop_back();
      } else {
        id = strands.size();
        strands.emplace_back(s, std::nullopt);
        next.emplace_back();
      }
      if (pr.right) {
        next[id] = pr.right;
        next_at[*pr.right].push_back(id);
      }
    }
    for (std::size_t id = 0; id < strands.size(); ++id) strands[id].push_back(next[id]);
    at = std::move(next_at);
  }

  const std::size_t window = std::min<std::size_t>(3, stages.size());
  std::size_t absorbed = 0, converged = 0, unconverged = 0;
  std::vector<Point> limit_pts;
  for (const auto& path : strands) {
    auto first = path.end() - static_cast<std::ptrdiff_t>(window);
    bool sinks = std::all_of(first, path.end(), [&](const auto& x) { return !x || pair.dist_to_A(*x) <= tolerance; });
    if (sinks) {
      ++absorbed;
      continue;
    }
    bool settled = std::all_of(first, path.end(), [](const auto& x) { return x.has_value(); });
    for (auto a = first; settled && a != path.end(); ++a) {
      for (auto b = a + 1; settled && b != path.end(); ++b) settled = quotient_distance(pair, **a, **b) <= tolerance;
    }
    if (settled) {
      ++converged;
      limit_pts.push_back(*path.back());
    } else {
      ++unconverged;
    }
  }

  CauchyLimit out{Diagram::canonicalize(pair, limit_pts), {}};
  ProbeReport& report = out.report;
  report.probe = "cauchy-chain";
  for (std::size_t n = 0; n < L; ++n) {
    report.trace.emplace_back(static_cast<double>(n), bottleneck(sequence[n], out.limit, pair).value);
  }
  bool enveloped = true;
  for (std::size_t n = L - std::min<std::size_t>(3, L); n < L; ++n) {
    std::size_t k = 0;
    while (k + 1 < levels.size() && levels[k + 1] <= n) ++k;
    if (levels[k] > n) continue;
    enveloped = enveloped && report.trace[n].second <= std::ldexp(2.0, -static_cast<int>(k)) + tolerance;
  }
  if (unconverged > 0) {
    report.verdict = Verdict::Inconclusive;
  } else {
    report.verdict = enveloped ? Verdict::Witnessed : Verdict::Refuted;
  }
  report.witnesses = {{"subsequence", levels},       {"stages", stages},
                      {"strands", strands.size()},    {"absorbed", absorbed},
                      {"converged", converged},       {"unconverged", unconverged},
                      {"enveloped", enveloped},       {"tolerance", tolerance},
                      {"limit", diagram_to_json(out.limit, pair)}};
  return out;
}

EpsNet greedy_eps_net(const MetricPair& pair, double delta, double D, double epsilon, std::span<const Point> samples) {
  if (!(delta > 0.0 && delta < D)) throw PreconditionViolated("eps-net annulus needs 0 < delta < D");
  if (!(epsilon > 0.0)) throw PreconditionViolated("eps-net radius must be positive");
  std::vector<const Point*> pts;
  for (const auto& x : samples) {
    pair.check(x);
    double r = pair.dist_to_A(x);
    if (r >= delta && r < D) pts.push_back(&x);
  }
  if (pts.empty()) throw EmptyAnnulus("no sample lies in the annulus");

  EpsNet net{epsilon, {}, delta, D, pts.size()};
  std::vector<double> gap(pts.size(), std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  while (true) {
    const Point& c = *pts[next];
    net.centers.push_back(c);
    double far = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      gap[i] = std::min(gap[i], pair.dist(*pts[i], c));
      if (gap[i] > far) {
        far = gap[i];
        next = i;
      }
    }
    if (far < epsilon) break;
  }
  return net;
}

ProbeReport net_growth_probe(const MetricPair& pair, double delta, double D, double epsilon, std::uint64_t seed,
                             std::span<const double> extents, std::size_t samples_per_unit) {
  ProbeReport report;
  report.probe = "eps-net";
  nlohmann::json sizes = nlohmann::json::array();
  nlohmann::json counts = nlohmann::json::array();
  std::vector<std::size_t> size_of;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    Rng rng(seed + i);
    const double extent = extents[i];
    const auto count = static_cast<std::size_t>(std::ceil(static_cast<double>(samples_per_unit) * extent));
    std::vector<Point> samples = sample_annulus(pair, delta, D, extent, std::max<std::size_t>(count, 1), rng);
    EpsNet net = greedy_eps_net(pair, delta, D, epsilon, samples);
    size_of.push_back(net.centers.size());
    sizes.push_back(net.centers.size());
    counts.push_back(samples.size());
    report.trace.emplace_back(extent, static_cast<double>(net.centers.size()));
  }
  // linear growth in the extent, with a quarter of slack
  bool unbounded = size_of.size() >= 2;
  for (std::size_t i = 1; i < size_of.size(); ++i) {
    double ratio = extents[i] / extents[i - 1];
    unbounded = unbounded && static_cast<double>(size_of[i]) >= 0.75 * ratio * static_cast<double>(size_of[i - 1]);
  }
  report.verdict = unbounded ? Verdict::Refuted : Verdict::Inconclusive;
  report.witnesses = {{"delta", delta},
                      {"D", D},
                      {"epsilon", epsilon},
                      {"extents", std::vector<double>(extents.begin(), extents.end())},
                      {"samples", counts},
                      {"net_sizes", sizes},
                      {"interval_bound", std::ceil((D - delta) / epsilon) + 1.0}};
  return report;
}

EpsNet half_line_net(std::size_t n) {
  if (n == 0) throw PreconditionViolated("net level must be positive");
  MetricPair pair = MetricPair::half_line();
  const double nn = static_cast<double>(n);
  EpsNet net{1.0 / nn, {}, 1.0 / nn, nn, 0};
  for (std::size_t k = 0;; ++k) {
    double c = static_cast<double>(2 * k + 1) / (2.0 * nn);
    if (c >= nn) break;
    net.centers.push_back(pair.point({c}));
  }
  net.covered = net.centers.size();
  return net;
}

DenseFamily dense_family(const MetricPair& pair, std::size_t n, const EpsNet& net, std::span<const Point> samples) {
  if (n == 0) throw PreconditionViolated("family level must be positive");
  const double r = 1.0 / static_cast<double>(n);
  if (net.epsilon > r || net.delta > r || net.D < static_cast<double>(n)) {
    throw PreconditionViolated("the net must cover B_n(A) minus B_1/n(A) at radius 1/n");
  }
  for (const auto& c : net.centers) pair.check(c);
  DenseFamily family{n, net.centers};
  std::sort(family.centers.begin(), family.centers.end());
  for (const auto& x : samples) {
    pair.check(x);
    double a = pair.dist_to_A(x);
    if (a < r || a >= static_cast<double>(n)) continue;
    bool hit = std::any_of(family.centers.begin(), family.centers.end(),
                           [&](const Point& c) { return pair.dist(x, c) <= r; });
    if (!hit) throw CoverageGap("a sample of the annulus has no center within 1/n");
  }
  return family;
}

Approximation approximate_from_family(const Diagram& sigma, const DenseFamily& family, const MetricPair& pair) {
  if (sigma.space_id() != pair.id()) throw SpaceMismatch("diagram does not belong to the given metric pair");
  const double r = 1.0 / static_cast<double>(family.n);
  std::vector<DiagramPoint> snapped;
  for (const auto& x : sigma.points()) {
    if (pair.dist_to_A(x.point) < r) continue;
    const Point* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& c : family.centers) {
      double d = pair.dist(x.point, c);
      if (d < best_d) {
        best_d = d;
        best = &c;
      }
    }
    if (best == nullptr || best_d > r) throw CoverageGap("a diagram point has no center within 1/n");
    snapped.push_back({*best, x.mult});
  }
  Approximation out{Diagram::canonicalize(pair, std::move(snapped)), 0.0};
  out.distance = bottleneck(sigma, out.approximant, pair).value;
  return out;
}

Adversary separability_adversary(const MetricPair& pair, std::span<const Diagram> candidates, double delta, double D,
                                 double epsilon, std::span<const Point> separated_points) {
  if (!(epsilon > 0.0)) throw PreconditionViolated("epsilon must be positive");
  if (!(delta > 0.0 && delta < D)) throw PreconditionViolated("annulus needs 0 < delta < D");
  if (epsilon > delta) throw PreconditionViolated("adversary needs epsilon <= delta");
  if (candidates.size() > separated_points.size()) {
    throw PreconditionViolated("more candidates than separated points");
  }
  for (const auto& x : separated_points) {
    pair.check(x);
    double r = pair.dist_to_A(x);
    if (!(r >= delta && r < D)) throw PreconditionViolated("separated point outside the annulus");
  }
  for (std::size_t i = 0; i < separated_points.size(); ++i) {
    for (std::size_t j = i + 1; j < separated_points.size(); ++j) {
      if (pair.dist(separated_points[i], separated_points[j]) < epsilon) {
        throw PreconditionViolated("separated points closer than epsilon");
      }
    }
  }
  for (const auto& s : candidates) {
    if (s.space_id() != pair.id()) throw SpaceMismatch("candidate does not belong to the given metric pair");
  }

  const double half = epsilon / 2.0;
  std::vector<Point> chosen;
  nlohmann::json included = nlohmann::json::array();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Point& xi = separated_points[i];
    bool far = true;
    for (const auto& x : candidates[i].points()) far = far && pair.dist(x.point, xi) >= half;
    if (far) {
      chosen.push_back(xi);
      included.push_back(i);
    }
  }
  Adversary out{Diagram::canonicalize(pair, chosen), {}};
  ProbeReport& report = out.report;
  report.probe = "adversary";
  bool separated = true;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double d = bottleneck(out.tau, candidates[i], pair).value;
    separated = separated && d >= half;
    report.trace.emplace_back(static_cast<double>(i), d);
  }
  report.verdict = separated ? Verdict::Witnessed : Verdict::Refuted;
  report.witnesses = {{"epsilon", epsilon},
                      {"bound", half},
                      {"included", included},
                      {"separated_points", points_json(separated_points)},
                      {"tau", diagram_to_json(out.tau, pair)}};
  return out;
}

}  // namespace pdspace
