#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "pdspace/errors.hpp"

namespace pdspace {

/// A nonnegative distance that may also be +infinity ("inf of the empty set").
class ExtendedDistance {
 public:
  constexpr ExtendedDistance() = default;

  explicit ExtendedDistance(double value) : value_(value) {
    if (std::isnan(value) || value < 0.0) {
      throw std::invalid_argument("ExtendedDistance must be nonnegative, got " + std::to_string(value));
    }
  }

  static constexpr ExtendedDistance infinity() {
    ExtendedDistance d;
    d.value_ = std::numeric_limits<double>::infinity();
    return d;
  }

  constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  constexpr double value() const { return value_; }

  friend ExtendedDistance operator+(ExtendedDistance a, ExtendedDistance b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtendedDistance(a.value_ + b.value_);
  }

  friend constexpr bool operator==(ExtendedDistance, ExtendedDistance) = default;
  friend constexpr std::partial_ordering operator<=>(ExtendedDistance a, ExtendedDistance b) {
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
};

/// Exponent p in [1, inf] selecting the Wasserstein (finite) or bottleneck (inf) distance.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("exponent p must lie in [1, inf]");
  }

  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(p_); }
  double value() const { return p_; }

  friend bool operator==(Exponent, Exponent) = default;

 private:
  double p_;
};

}  // namespace pdspace
