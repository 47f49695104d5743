#include <algorithm>
#include <cmath>
#include <limits>

#include "pdspace/matching.hpp"

namespace pdspace {

namespace {

// Enumerates every bijection of sigma + |tau| copies of A onto tau + |sigma| copies of A.
// Copies of A are indistinguishable and A<->A costs nothing, so a bijection is determined
// by the partial injection sigma -> tau it induces; every such injection is visited once.
class BijectionEnumerator {
 public:
  BijectionEnumerator(std::vector<Point> xs, std::vector<Point> ys, const MetricPair& pair, Exponent p)
      : xs_(std::move(xs)), ys_(std::move(ys)), pair_(pair), p_(p), used_(ys_.size(), false) {}

  double run() {
    costs_.clear();
    visit(0);
    return best_;
  }

 private:
  void visit(std::size_t i) {
    if (i == xs_.size()) {
      std::size_t depth = costs_.size();
      for (std::size_t j = 0; j < ys_.size(); ++j) {
        if (!used_[j]) costs_.push_back(pair_.dist_to_A(ys_[j]));
      }
      best_ = std::min(best_, objective());
      costs_.resize(depth);
      return;
    }
    costs_.push_back(pair_.dist_to_A(xs_[i]));
    visit(i + 1);
    costs_.pop_back();
    for (std::size_t j = 0; j < ys_.size(); ++j) {
      if (used_[j]) continue;
      used_[j] = true;
      costs_.push_back(pair_.dist(xs_[i], ys_[j]));
      visit(i + 1);
      costs_.pop_back();
      used_[j] = false;
    }
  }

  double objective() const {
    if (p_.is_infinite()) {
      double worst = 0.0;
      for (double c : costs_) worst = std::max(worst, c);
      return worst;
    }
    std::vector<double> terms;
    terms.reserve(costs_.size());
    for (double c : costs_) terms.push_back(std::pow(c, p_.value()));
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return std::pow(sum, 1.0 / p_.value());
  }

  std::vector<Point> xs_, ys_;
  const MetricPair& pair_;
  Exponent p_;
  std::vector<bool> used_;
  std::vector<double> costs_;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace

double brute_force_dp(const Diagram& sigma, const Diagram& tau, Exponent p, const MetricPair& pair) {
  if (sigma.space_id() != pair.id() || tau.space_id() != pair.id()) {
    throw SpaceMismatch("diagrams must both belong to the given metric pair");
  }
  if (sigma.size() + tau.size() > kBruteForceMaxPoints) {
    throw TooLarge("brute force is capped at " + std::to_string(kBruteForceMaxPoints) + " points");
  }
  return BijectionEnumerator(sigma.expanded(), tau.expanded(), pair, p).run();
}

}  // namespace pdspace
