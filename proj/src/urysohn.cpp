#include "coarse/urysohn.hpp"

#include <algorithm>
#include <string>

namespace coarse {
namespace {

void check_spec(const DiscreteSpace& space, const StepFunctionSpec& spec) {
  const auto& exh = spec.levels;
  if (exh.point_count() != space.size()) {
    throw Error(ErrorCode::InvalidArgument, "step function levels do not match the space");
  }
  if (static_cast<int>(spec.targets.size()) != exh.depth() + 1) {
    throw Error(ErrorCode::InvalidArgument, "need depth + 1 = " + std::to_string(exh.depth() + 1) + " targets, got " +
                                                std::to_string(spec.targets.size()));
  }
  for (std::size_t k = 0; k < spec.targets.size(); ++k) {
    if (!(spec.targets[k] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "targets must be nonnegative");
    if (k > 0 && spec.targets[k] < spec.targets[k - 1]) {
      throw Error(ErrorCode::InvalidArgument, "targets must be nondecreasing");
    }
  }
}

// d(C_{n-2}, X \ C_{n-1}); +inf when either side is empty.
double plateau_gap(const DiscreteSpace& space, const Exhaustion& exh, int n) {
  return set_distance(space.metric(), exh.level(n - 2), exh.complement(n - 1));
}

}  // namespace

PointValues plateau(const DiscreteSpace& space, const StepFunctionSpec& spec, int n) {
  check_spec(space, spec);
  const auto& exh = spec.levels;
  if (n < 0 || n > exh.depth()) throw Error(ErrorCode::InvalidArgument, "plateau index out of range");
  const double height = spec.targets[static_cast<std::size_t>(n)];
  const Index size = space.size();
  if (n >= 1 && exh.complement(n - 1).empty()) return PointValues::Zero(size);
  if (n <= 1) return PointValues::Constant(size, height);

  const IndexSet inner = exh.level(n - 2);
  const double gap = plateau_gap(space, exh, n);
  if (gap == infinity<double>()) return PointValues::Zero(size);
  if (gap <= kDefaultTolerance.equality) {
    throw Error(ErrorCode::ZeroGap, "d(C_" + std::to_string(n - 2) + ", X \\ C_" + std::to_string(n - 1) + ") = 0");
  }

  PointValues out(size);
  for (Index x = 0; x < size; ++x) {
    if (exh.contains(n - 2, x)) {
      out(x) = 0.0;
    } else if (!exh.contains(n - 1, x)) {
      out(x) = height;
    } else {
      out(x) = height * std::min(1.0, point_set_distance(space.metric(), x, inner) / gap);
    }
  }
  return out;
}

StepFunction step_function(const DiscreteSpace& space, const StepFunctionSpec& spec) {
  check_spec(space, spec);
  StepFunction out;
  out.values = PointValues::Zero(space.size());
  for (int n = 0; n <= spec.levels.depth(); ++n) {
    out.components.push_back(plateau(space, spec, n));
    out.values = out.values.cwiseMax(out.components.back());
  }
  return out;
}

double lipschitz_bound(const DiscreteSpace& space, const StepFunctionSpec& spec) {
  check_spec(space, spec);
  double best = 0.0;
  for (int n = 2; n <= spec.levels.depth(); ++n) {
    const double gap = plateau_gap(space, spec.levels, n);
    if (gap == infinity<double>()) continue;
    best = std::max(best, spec.targets[static_cast<std::size_t>(n)] / gap);
  }
  return best;
}

}  // namespace coarse
