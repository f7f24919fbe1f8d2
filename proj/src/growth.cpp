#include "coarse/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace coarse {
namespace {

std::int64_t ceil_to_count(double v) {
  if (!(v > 0.0)) return 0;
  constexpr double kMax = 9.0e18;
  if (v >= kMax) return static_cast<std::int64_t>(kMax);
  return static_cast<std::int64_t>(std::ceil(v));
}

}  // namespace

GrowthFunction::GrowthFunction(std::vector<std::int64_t> prefix, GrowthTail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (std::holds_alternative<ConstantTail>(tail_) && prefix_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "constant continuation needs a nonempty prefix");
  }
  for (auto v : prefix_) {
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "growth values must be nonnegative");
  }
}

GrowthFunction GrowthFunction::constant(std::int64_t value) { return GrowthFunction({value}); }

GrowthFunction GrowthFunction::polynomial(std::vector<double> coefficients) {
  return GrowthFunction({}, PolynomialTail{std::move(coefficients)});
}

GrowthFunction GrowthFunction::exponential(double scale, double base) {
  return GrowthFunction({}, ExponentialTail{scale, base});
}

std::int64_t GrowthFunction::operator()(int n) const {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "growth function evaluated at a negative index");
  if (static_cast<std::size_t>(n) < prefix_.size()) return prefix_[static_cast<std::size_t>(n)];
  if (std::holds_alternative<ConstantTail>(tail_)) return prefix_.back();
  if (const auto* poly = std::get_if<PolynomialTail>(&tail_)) {
    double acc = 0.0;
    for (auto it = poly->coefficients.rbegin(); it != poly->coefficients.rend(); ++it) acc = acc * n + *it;
    return ceil_to_count(acc);
  }
  const auto& e = std::get<ExponentialTail>(tail_);
  return ceil_to_count(e.scale * std::pow(e.base, n));
}

std::string GrowthFunction::describe() const {
  std::ostringstream os;
  os << "prefix[";
  for (std::size_t i = 0; i < prefix_.size(); ++i) os << (i ? "," : "") << prefix_[i];
  os << "]";
  if (std::holds_alternative<ConstantTail>(tail_)) {
    os << "+constant";
  } else if (const auto* poly = std::get_if<PolynomialTail>(&tail_)) {
    os << "+poly(";
    for (std::size_t i = 0; i < poly->coefficients.size(); ++i) os << (i ? "," : "") << poly->coefficients[i];
    os << ")";
  } else {
    const auto& e = std::get<ExponentialTail>(tail_);
    os << "+exp(" << e.scale << "," << e.base << ")";
  }
  return os.str();
}

SpeedFunction::SpeedFunction(std::vector<double> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw Error(ErrorCode::InvalidArgument, "speed function needs at least one knot");
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    if (!(knots_[k] >= 1.0)) throw Error(ErrorCode::InvalidArgument, "speed function values must be >= 1");
    if (k > 0 && knots_[k] < knots_[k - 1]) throw Error(ErrorCode::InvalidArgument, "speed function must be nondecreasing");
  }
  cumulative_.assign(knots_.size(), 0.0);
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    cumulative_[k] = cumulative_[k - 1] + 0.25 * (knots_[k - 1] + knots_[k]);
  }
}

double SpeedFunction::operator()(double s) const {
  if (s < 0.0) throw Error(ErrorCode::NegativeArgument, "speed function evaluated at a negative argument");
  const double pos = 2.0 * s;
  const auto last = knots_.size() - 1;
  if (pos >= static_cast<double>(last)) return knots_.back();
  const auto k = static_cast<std::size_t>(pos);
  const double t = pos - static_cast<double>(k);
  return knots_[k] + t * (knots_[k + 1] - knots_[k]);
}

double SpeedFunction::antiderivative(double s) const {
  if (s < 0.0) throw Error(ErrorCode::NegativeArgument, "F evaluated at a negative argument");
  const double pos = 2.0 * s;
  const auto last = knots_.size() - 1;
  if (pos >= static_cast<double>(last)) {
    return cumulative_.back() + (s - last_knot_position()) * knots_.back();
  }
  const auto k = static_cast<std::size_t>(pos);
  const double left = 0.5 * static_cast<double>(k);
  return cumulative_[k] + 0.5 * (s - left) * (knots_[k] + (*this)(s));
}

SpeedFunction make_speed_function(const GrowthFunction& g, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "speed function depth must be >= 1");
  std::vector<double> knots;
  double running = 1.0;
  for (int k = 0; k <= 2 * depth; ++k) {
    running = std::max(running, static_cast<double>(g(k)));
    knots.push_back(running);
  }
  return SpeedFunction(std::move(knots));
}

double integrate(const SpeedFunction& f, double s) {
  if (s < 0.0) throw Error(ErrorCode::NegativeArgument, "cannot integrate to a negative bound");
  return f.antiderivative(s);
}

}  // namespace coarse
