#pragma once

// Truncated separation criteria at infinity:
//   Smirnov: A, B separated iff d(A, B) > 0.
//   Higson:  A, B separated iff d(x, A) + d(x, B) > R outside some compact K_R,
//            for every R.
// Verdicts hold only up to the depth of the exhaustion, with witness data.

#include <optional>
#include <string_view>
#include <vector>

#include "coarse/space.hpp"

namespace coarse {

enum class SeparationKind { Smirnov, Higson };
enum class Verdict { SeparatedUpToDepth, NotSeparated, Inconclusive };

std::string_view to_string(SeparationKind kind);
std::string_view to_string(Verdict verdict);

struct SeparationVerdict {
  SeparationKind kind = SeparationKind::Smirnov;
  // Smirnov: per_band[n] = d(A \ K_n, B \ K_n).
  // Higson:  per_band[n] = min_{x ∉ K_n} d(x, A) + d(x, B).
  // Indexed n = 0 .. depth - 2; +inf marks an empty side.
  std::vector<double> per_band;
  Verdict verdict = Verdict::Inconclusive;
  double threshold = 0.0;  // Smirnov eps
  double distance = 0.0;   // Smirnov d(A, B)
  std::vector<double> r_grid;
  std::vector<std::optional<int>> witness_levels;  // Higson n(R) per grid entry
};

inline constexpr double kDefaultSmirnovEps = 1e-6;

SeparationVerdict smirnov_separated(const DiscreteSpace& space, const ClosedSetPair& pair, const MetricMatrix& metric,
                                    double eps = kDefaultSmirnovEps);
/// Same verdict, plus tail infima over the exhaustion.
SeparationVerdict smirnov_separated(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                                    const MetricMatrix& metric, double eps = kDefaultSmirnovEps);

/// Default grid {1, 2, ..., depth - 3}.
std::vector<double> default_r_grid(const Exhaustion& exh);

SeparationVerdict higson_separated(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                                   const MetricMatrix& metric, const std::vector<double>& r_grid);

struct OscillationResult {
  std::optional<int> level;            // least N with every x ∉ K_N oscillating below eps
  std::vector<double> tail_oscillation;  // max_{x ∉ K_N} diam values(B(x, r)), N = 0 .. depth - 2
};

/// Slow oscillation on the truncation: diam of `values` over metric balls of
/// radius r, outside successive levels. Only levels with a nonempty
/// complement can witness.
OscillationResult slowly_oscillating_check(const DiscreteSpace& space, const Exhaustion& exh,
                                           const PointValues& values, const MetricMatrix& metric, double r,
                                           double eps);

}  // namespace coarse
