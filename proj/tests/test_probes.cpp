#include <gtest/gtest.h>

#include <cmath>

#include "pdspace/probes.hpp"
#include "pdspace/sampling.hpp"
#include "support/gen.hpp"

using namespace pdspace;

namespace {

Diagram line_diagram(const MetricPair& pair, std::initializer_list<double> pts) {
  std::vector<Point> raw;
  for (double x : pts) raw.push_back(pair.point({x}));
  return Diagram::canonicalize(pair, raw);
}

MetricPair triangle() { return MetricPair::finite({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {0}, {"a", "x", "y"}); }

PointSequence approach(const MetricPair& pair) {
  return [pair](std::size_t n) -> std::optional<Point> {
    double h = 1.0 / static_cast<double>(n);
    return pair.point({h, 4.0 + h});
  };
}

std::vector<Diagram> geometric(const MetricPair& pair, std::size_t length, auto make) {
  std::vector<Diagram> seq;
  for (std::size_t j = 0; j < length; ++j) {
    seq.push_back(Diagram::canonicalize(pair, make(std::ldexp(1.0, -static_cast<int>(j)))));
  }
  return seq;
}

}  // namespace

TEST(IsolatedBound, TrianglePair) {
  auto pair = triangle();
  auto sigma = Diagram::canonicalize(pair, {pair.point({1})});
  auto tau = Diagram::canonicalize(pair, {pair.point({2})});
  auto r = isolated_point_bound(pair, sigma, tau);
  EXPECT_EQ(r.verdict, Verdict::Witnessed);
  EXPECT_EQ(r.witnesses["epsilon"], 1.0);
  EXPECT_EQ(r.witnesses["distance"], 1.0);
  EXPECT_EQ(brute_force_dp(sigma, tau, Exponent::infinity(), pair), 1.0);
}

TEST(IsolatedBound, Preconditions) {
  auto pair = triangle();
  auto sigma = Diagram::canonicalize(pair, {pair.point({1})});
  EXPECT_THROW(isolated_point_bound(pair, sigma, sigma), PreconditionViolated);
  auto line = MetricPair::half_line();
  EXPECT_THROW(isolated_point_bound(line, line_diagram(line, {1}), line_diagram(line, {2})), PreconditionViolated);
}

TEST(IsolatedBound, RandomFiniteSpaces) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::Gen g(seed);
    auto pair = g.finite_space(4 + g.index(5), 1 + g.index(2));
    Diagram a = g.diagram(pair, 5), b = g.diagram(pair, 5);
    if (a == b) continue;
    auto r = isolated_point_bound(pair, a, b);
    EXPECT_EQ(r.verdict, Verdict::Witnessed) << "seed " << seed;
    EXPECT_GE(r.witnesses["distance"].get<double>(), r.witnesses["epsilon"].get<double>());
  }
}

TEST(VanishingPair, SingleSwapBound) {
  auto pair = MetricPair::plane();
  auto x = pair.point({0, 4});
  auto r = vanishing_pair_demo(pair, x, approach(pair), 50);
  EXPECT_EQ(r.verdict, Verdict::Witnessed);
  ASSERT_EQ(r.trace.size(), 50u);
  EXPECT_LE(r.trace[9].second, 1.0 / 11.0);
  EXPECT_LE(r.trace[0].second, pair.dist(x, pair.point({0.5, 4.5})));
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    EXPECT_LE(r.trace[i].second, r.witnesses["single_swap_bounds"][i].get<double>());
  }
  EXPECT_LT(r.trace.back().second, 0.05);
}

TEST(VanishingPair, Preconditions) {
  auto pair = MetricPair::plane();
  auto x = pair.point({0, 4});
  PointSequence short_seq = [&](std::size_t n) -> std::optional<Point> {
    if (n > 3) return std::nullopt;
    return approach(pair)(n);
  };
  EXPECT_THROW(vanishing_pair_demo(pair, x, short_seq, 10), PreconditionViolated);
  PointSequence constant = [&](std::size_t) -> std::optional<Point> { return x; };
  EXPECT_THROW(vanishing_pair_demo(pair, x, constant, 3), PreconditionViolated);
  auto fin = triangle();
  EXPECT_THROW(vanishing_pair_demo(fin, fin.point({1}), constant, 3), PreconditionViolated);
}

TEST(CauchyChain, Constant) {
  auto pair = MetricPair::plane();
  auto sigma = Diagram::canonicalize(pair, {pair.point({0, 4}), pair.point({1, 3}), pair.point({1, 3})});
  std::vector<Diagram> seq(3, sigma);
  auto out = cauchy_chain_limit(seq, pair);
  EXPECT_EQ(out.limit, sigma);
  EXPECT_EQ(out.report.verdict, Verdict::Witnessed);
  for (auto [n, d] : out.report.trace) EXPECT_EQ(d, 0.0);
}

TEST(CauchyChain, ConvergingPoint) {
  auto pair = MetricPair::plane();
  auto seq = geometric(pair, 31, [&](double h) { return std::vector<Point>{pair.point({0, 4 + h})}; });
  auto out = cauchy_chain_limit(seq, pair);
  EXPECT_EQ(out.report.verdict, Verdict::Witnessed);
  auto expected = Diagram::canonicalize(pair, {pair.point({0, 4})});
  EXPECT_LE(bottleneck(out.limit, expected, pair).value, 1e-6);
  EXPECT_LE(out.report.trace.back().second, 1e-6);
  // distances along the sequence are the solver's |1/n - 1/m|
  EXPECT_EQ(bottleneck(seq[1], seq[3], pair).value, 0.5 - 0.125);
}

TEST(CauchyChain, AbsorbedIntoA) {
  auto pair = MetricPair::plane();
  auto seq = geometric(pair, 31, [&](double h) { return std::vector<Point>{pair.point({h, 2 * h})}; });
  EXPECT_EQ(bottleneck(seq[3], Diagram(pair), pair).value, 1.0 / 16.0);
  auto out = cauchy_chain_limit(seq, pair);
  EXPECT_EQ(out.report.verdict, Verdict::Witnessed);
  EXPECT_TRUE(out.limit.empty());
  EXPECT_LE(out.report.trace.back().second, 1e-6);
}

TEST(CauchyChain, NotCauchy) {
  auto pair = MetricPair::plane();
  auto a = Diagram::canonicalize(pair, {pair.point({0, 4})});
  auto b = Diagram::canonicalize(pair, {pair.point({0, 5})});
  std::vector<Diagram> alternating;
  for (int i = 0; i < 10; ++i) alternating.push_back(i % 2 ? b : a);
  EXPECT_THROW(cauchy_chain_limit(alternating, pair), NotCauchy);
  EXPECT_THROW(cauchy_chain_limit(std::vector<Diagram>{a}, pair), NotCauchy);
}

TEST(CauchyChain, SlowSequenceIsInconclusive) {
  auto pair = MetricPair::plane();
  std::vector<Diagram> seq;
  for (int n = 1; n <= 40; ++n) seq.push_back(Diagram::canonicalize(pair, {pair.point({0, 4 + 1.0 / n})}));
  EXPECT_EQ(cauchy_chain_limit(seq, pair).report.verdict, Verdict::Inconclusive);
}

TEST(EpsNet, HalfLineStaysBounded) {
  auto pair = MetricPair::half_line();
  for (std::size_t count : {10u, 100u, 1000u, 10000u}) {
    Rng rng(count);
    auto samples = sample_annulus(pair, 1, 2, 0, count, rng);
    auto net = greedy_eps_net(pair, 1, 2, 0.25, samples);
    EXPECT_LE(net.centers.size(), 5u);
  }
}

TEST(EpsNet, GreedyProperties) {
  auto pair = MetricPair::plane(Norm::Euclidean);
  Rng rng(7);
  auto samples = sample_annulus(pair, 1, 2, 10, 2000, rng);
  auto net = greedy_eps_net(pair, 1, 2, 0.5, samples);
  for (std::size_t i = 0; i < net.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < net.centers.size(); ++j) EXPECT_GE(pair.dist(net.centers[i], net.centers[j]), 0.5);
  }
  for (const auto& x : samples) {
    double best = 1e300;
    for (const auto& c : net.centers) best = std::min(best, pair.dist(x, c));
    EXPECT_LT(best, 0.5);
  }
}

TEST(EpsNet, DegenerateInputs) {
  auto pair = MetricPair::plane();
  std::vector<Point> same(20, pair.point({0, 3}));
  EXPECT_EQ(greedy_eps_net(pair, 1, 2, 0.25, same).centers.size(), 1u);
  std::vector<Point> outside = {pair.point({0, 1}), pair.point({0, 10})};
  EXPECT_THROW(greedy_eps_net(pair, 1, 2, 0.25, outside), EmptyAnnulus);
  EXPECT_THROW(greedy_eps_net(pair, 2, 1, 0.25, same), PreconditionViolated);
}

TEST(EpsNet, GrowthProxy) {
  std::vector<double> extents = {4, 8, 16, 32};
  EXPECT_EQ(net_growth_probe(MetricPair::plane(), 1, 2, 0.25, 0, extents).verdict, Verdict::Refuted);
  auto line = net_growth_probe(MetricPair::half_line(), 1, 2, 0.25, 0, extents);
  EXPECT_EQ(line.verdict, Verdict::Inconclusive);
  for (auto [extent, size] : line.trace) EXPECT_LE(size, 5.0);
}

TEST(DenseFamily, WorkedExample) {
  auto pair = MetricPair::half_line();
  auto family = dense_family(pair, 4, half_line_net(4));
  EXPECT_EQ(family.centers.front(), pair.point({0.125}));
  auto a = approximate_from_family(line_diagram(pair, {1.1, 2.3}), family, pair);
  EXPECT_EQ(a.approximant, line_diagram(pair, {1.125, 2.375}));
  EXPECT_NEAR(a.distance, 0.075, 1e-12);
  EXPECT_LE(a.distance, 0.25);
  auto empty = approximate_from_family(Diagram(pair), family, pair);
  EXPECT_TRUE(empty.approximant.empty());
  EXPECT_EQ(empty.distance, 0.0);
}

TEST(DenseFamily, SmallPointsAreDropped) {
  auto pair = MetricPair::half_line();
  auto family = dense_family(pair, 4, half_line_net(4));
  // 3.0 is equidistant from 2.875 and 3.125; the smaller center wins
  auto a = approximate_from_family(line_diagram(pair, {0.2, 3.0}), family, pair);
  EXPECT_EQ(a.approximant, line_diagram(pair, {2.875}));
  EXPECT_EQ(a.distance, 0.2);
}

TEST(DenseFamily, RandomDiagramsWithinOneOverN) {
  auto pair = MetricPair::half_line();
  Rng rng(5);
  auto samples = sample_annulus(pair, 0.1, 10, 0, 500, rng);
  auto family = dense_family(pair, 10, half_line_net(10), samples);
  gen::Gen g(6);
  for (int i = 0; i < 100; ++i) {
    auto a = approximate_from_family(g.diagram(pair, 8), family, pair);
    EXPECT_LE(a.distance, 0.1);
  }
}

TEST(DenseFamily, CoverageErrors) {
  auto pair = MetricPair::half_line();
  EpsNet sparse{0.25, {pair.point({0.125})}, 0.25, 4, 1};
  std::vector<Point> samples = {pair.point({3.0})};
  EXPECT_THROW(dense_family(pair, 4, sparse, samples), CoverageGap);
  auto family = dense_family(pair, 4, sparse);
  EXPECT_THROW(approximate_from_family(line_diagram(pair, {3.0}), family, pair), CoverageGap);
  EXPECT_THROW(dense_family(pair, 2, half_line_net(1)), PreconditionViolated);
}

TEST(Adversary, PlaneCandidates) {
  auto pair = MetricPair::plane();
  std::vector<Point> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(pair.point({2.0 * i, 2.0 * i + 3}));
  gen::Gen g(8);
  std::vector<Diagram> cands;
  for (int i = 0; i < 10; ++i) cands.push_back(g.diagram(pair, 6, true));
  // a candidate sitting on its separated point forces that point out of tau
  cands[3] = Diagram::canonicalize(pair, {xs[3]});
  auto out = separability_adversary(pair, cands, 1, 2, 1, xs);
  EXPECT_EQ(out.report.verdict, Verdict::Witnessed);
  for (auto [i, d] : out.report.trace) EXPECT_GE(d, 0.5);
  for (const auto& x : out.tau.points()) EXPECT_NE(x.point, xs[3]);
}

TEST(Adversary, EmptyCandidates) {
  auto pair = MetricPair::plane();
  std::vector<Point> xs = {pair.point({0, 3}), pair.point({2, 5}), pair.point({4, 7})};
  std::vector<Diagram> cands(3, Diagram(pair));
  auto out = separability_adversary(pair, cands, 1, 2, 1, xs);
  EXPECT_EQ(out.tau, Diagram::canonicalize(pair, xs));
  for (auto [i, d] : out.report.trace) EXPECT_EQ(d, 1.5);
  auto none = separability_adversary(pair, {}, 1, 2, 1, xs);
  EXPECT_EQ(none.report.verdict, Verdict::Witnessed);
  EXPECT_TRUE(none.tau.empty());
}

TEST(Adversary, Preconditions) {
  auto pair = MetricPair::plane();
  std::vector<Point> xs = {pair.point({0, 3}), pair.point({0.5, 3.5})};
  std::vector<Diagram> one(1, Diagram(pair));
  EXPECT_THROW(separability_adversary(pair, one, 1, 2, 1, xs), PreconditionViolated);
  std::vector<Point> ok = {pair.point({0, 3})};
  EXPECT_THROW(separability_adversary(pair, one, 1, 2, 1.5, ok), PreconditionViolated);
  std::vector<Point> outside = {pair.point({0, 10})};
  EXPECT_THROW(separability_adversary(pair, one, 1, 2, 1, outside), PreconditionViolated);
  std::vector<Diagram> two(2, Diagram(pair));
  EXPECT_THROW(separability_adversary(pair, two, 1, 2, 1, ok), PreconditionViolated);
}
