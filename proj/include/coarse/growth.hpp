#pragma once

// Growth functions g: ω → ω and the continuous speed functions f with
// f(n/2) >= g(n) that drive metric amplification.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "coarse/metric.hpp"

namespace coarse {

struct ConstantTail {
  friend bool operator==(const ConstantTail&, const ConstantTail&) = default;
};
/// g(n) = ceil(sum_k coefficients[k] * n^k)
struct PolynomialTail {
  std::vector<double> coefficients;
  friend bool operator==(const PolynomialTail&, const PolynomialTail&) = default;
};
/// g(n) = ceil(scale * base^n)
struct ExponentialTail {
  double scale = 1.0;
  double base = 2.0;
  friend bool operator==(const ExponentialTail&, const ExponentialTail&) = default;
};
using GrowthTail = std::variant<ConstantTail, PolynomialTail, ExponentialTail>;

/// Explicit values g(0..m) followed by a tail rule. A constant tail repeats
/// the last prefix value.
class GrowthFunction {
 public:
  explicit GrowthFunction(std::vector<std::int64_t> prefix, GrowthTail tail = ConstantTail{});

  static GrowthFunction constant(std::int64_t value);
  static GrowthFunction polynomial(std::vector<double> coefficients);
  static GrowthFunction exponential(double scale, double base);

  std::int64_t operator()(int n) const;

  const std::vector<std::int64_t>& prefix() const { return prefix_; }
  const GrowthTail& tail() const { return tail_; }

  std::string describe() const;

 private:
  std::vector<std::int64_t> prefix_;
  GrowthTail tail_;
};

/// Piecewise-linear f with knots f(k/2), k = 0..2·depth, constant past the
/// last knot. F(s) = ∫_0^s f is tracked exactly as a piecewise quadratic.
class SpeedFunction {
 public:
  explicit SpeedFunction(std::vector<double> knots);

  const std::vector<double>& knots() const { return knots_; }
  double last_knot_position() const { return 0.5 * static_cast<double>(knots_.size() - 1); }

  double operator()(double s) const;
  double antiderivative(double s) const;

 private:
  std::vector<double> knots_;
  std::vector<double> cumulative_;  // F at each knot
};

/// Knots f(k/2) = max{1, g(0), ..., g(k)} for k <= 2·depth.
SpeedFunction make_speed_function(const GrowthFunction& g, int depth);

/// F(s) = ∫_0^s f(t) dt, exact.
double integrate(const SpeedFunction& f, double s);

}  // namespace coarse
