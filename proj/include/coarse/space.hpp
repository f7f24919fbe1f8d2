#pragma once

// Finite nets standing in for locally compact separable metric spaces:
// the point set with its base metric, declared limit structure, compact
// exhaustions and the annular bands they induce.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coarse/metric.hpp"

namespace coarse {

enum class PointKind { Isolated, Limit };

/// A limit point may carry a list of net points declared to converge to it,
/// ordered by strictly decreasing distance.
struct LimitTag {
  PointKind kind = PointKind::Isolated;
  IndexSet sequence;

  friend bool operator==(const LimitTag&, const LimitTag&) = default;
};

struct LimitStructure {
  std::vector<LimitTag> tags;  // one per point
  // Whether the set of non-isolated points of the ambient space is compact.
  // Finite data cannot decide this, so it is declared.
  bool derivative_compact = false;

  IndexSet limit_points() const;

  friend bool operator==(const LimitStructure&, const LimitStructure&) = default;
};

class DiscreteSpace {
 public:
  DiscreteSpace(std::vector<std::string> ids, MetricMatrix metric, std::optional<LimitStructure> limits = std::nullopt,
                std::vector<std::vector<double>> coordinates = {});

  /// Builds the Euclidean metric from per-point coordinates.
  static DiscreteSpace euclidean(std::vector<std::string> ids, std::vector<std::vector<double>> coordinates,
                                 std::optional<LimitStructure> limits = std::nullopt);

  Index size() const { return metric_.rows(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const MetricMatrix& metric() const { return metric_; }
  double distance(Index i, Index j) const { return metric_(i, j); }
  const std::optional<LimitStructure>& limits() const { return limits_; }
  const std::vector<std::vector<double>>& coordinates() const { return coordinates_; }

  /// Same points and limit structure under another metric.
  DiscreteSpace with_metric(MetricMatrix metric) const;

  friend bool operator==(const DiscreteSpace& a, const DiscreteSpace& b);

 private:
  std::vector<std::string> ids_;
  MetricMatrix metric_;
  std::optional<LimitStructure> limits_;
  std::vector<std::vector<double>> coordinates_;
};

struct SequenceViolation {
  Index limit_point;
  std::size_t position;  // index into the declared sequence
  std::string reason;
};

struct ValidationReport {
  AxiomReport axioms;
  std::vector<SequenceViolation> sequences;

  bool empty() const { return axioms.ok() && sequences.empty(); }
};

ValidationReport validate_space(const DiscreteSpace& space, Tolerance tol = kDefaultTolerance);

/// Nested levels K_0 ⊊ K_1 ⊊ ... ⊊ K_{depth-1} = X with positive collars
/// d(K_n, X \ K_{n+1}) > 0. Indices outside the stored range follow the
/// conventions K_n = ∅ for n < 0 and K_n = X for n >= depth.
class Exhaustion {
 public:
  static Exhaustion from_levels(const DiscreteSpace& space, std::vector<IndexSet> levels,
                                Tolerance tol = kDefaultTolerance);

  int depth() const { return static_cast<int>(levels_.size()); }
  Index point_count() const { return static_cast<Index>(level_of_.size()); }
  IndexSet level(int n) const;
  IndexSet complement(int n) const;
  /// Least n with x ∈ K_n.
  int level_of(Index x) const { return level_of_[static_cast<std::size_t>(x)]; }
  bool contains(int n, Index x) const { return level_of(x) <= n; }
  /// collars()[n] = d(K_n, X \ K_{n+1}) for n < depth - 1.
  const std::vector<double>& collars() const { return collars_; }

  friend bool operator==(const Exhaustion&, const Exhaustion&) = default;

 private:
  Exhaustion() = default;
  std::vector<IndexSet> levels_;
  std::vector<int> level_of_;
  std::vector<double> collars_;
};

/// K_n = closed ball of radii[n] about `center`.
Exhaustion build_exhaustion(const DiscreteSpace& space, const std::vector<double>& radii, Index center,
                            Tolerance tol = kDefaultTolerance);

struct BallExhaustion {
  Index center = 0;
  std::vector<double> radii;

  friend bool operator==(const BallExhaustion&, const BallExhaustion&) = default;
};
using ExhaustionSpec = std::variant<BallExhaustion, std::vector<IndexSet>>;

Exhaustion make_exhaustion(const DiscreteSpace& space, const ExhaustionSpec& spec, Tolerance tol = kDefaultTolerance);

/// Δ_n = K_{n+2} \ K_n.
struct Band {
  int index;
  IndexSet points;
};

/// Δ_n for any n >= -2, using the K_n conventions of Exhaustion.
Band band(const Exhaustion& exh, int n);

/// Δ_0 ... Δ_{depth-2}. The last band reads K_depth as X, so the even bands
/// together with K_0 always cover the net.
std::vector<Band> bands(const Exhaustion& exh);

/// Two disjoint index sets, stored sorted.
class ClosedSetPair {
 public:
  ClosedSetPair(IndexSet a, IndexSet b);

  const IndexSet& a() const { return a_; }
  const IndexSet& b() const { return b_; }

 private:
  IndexSet a_;
  IndexSet b_;
};

IndexSet intersect(const IndexSet& sorted_a, const IndexSet& sorted_b);

}  // namespace coarse
