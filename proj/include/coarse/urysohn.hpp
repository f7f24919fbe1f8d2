#pragma once

// Step functions pinned to prescribed bands of a nested family of closed
// sets: φ(C_n \ C_{n-1}) ⊆ [r_n, r_{n+1}].

#include <vector>

#include "coarse/space.hpp"

namespace coarse {

/// targets holds r_0 ... r_depth (one more than the number of levels),
/// nonnegative and nondecreasing.
struct StepFunctionSpec {
  Exhaustion levels;
  std::vector<double> targets;
};

struct StepFunction {
  PointValues values;
  std::vector<PointValues> components;  // φ_0 ... φ_depth
};

/// φ_n(x) = r_n · min(1, d(x, C_{n-2}) / d(C_{n-2}, X \ C_{n-1})).
/// φ_n ≡ 0 when C_{n-1} is already X, and otherwise φ_n ≡ r_n when C_{n-2} is
/// empty.
PointValues plateau(const DiscreteSpace& space, const StepFunctionSpec& spec, int n);

/// Pointwise maximum of all plateaus.
StepFunction step_function(const DiscreteSpace& space, const StepFunctionSpec& spec);

/// max_n r_n / gap_n: a Lipschitz constant for φ with respect to the base metric.
double lipschitz_bound(const DiscreteSpace& space, const StepFunctionSpec& spec);

}  // namespace coarse
