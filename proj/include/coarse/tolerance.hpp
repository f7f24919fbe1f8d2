#pragma once

namespace coarse {

/// Absolute slacks used by every inequality and equality check.
struct Tolerance {
  double inequality = 1e-9;
  double equality = 1e-12;
};

inline constexpr Tolerance kDefaultTolerance{};

}  // namespace coarse
