#pragma once

// Dense metric-matrix primitives shared by every construction in the library.
// All functions accept any Eigen dense expression and are templated on its
// scalar type.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "coarse/error.hpp"
#include "coarse/tolerance.hpp"

namespace coarse {

using Index = Eigen::Index;
using IndexSet = std::vector<Index>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MetricMatrix = Matrix<double>;
using PointValues = Vector<double>;

template <typename Scalar>
constexpr Scalar infinity() {
  return std::numeric_limits<Scalar>::infinity();
}

struct AxiomViolation {
  enum class Kind { NonzeroDiagonal, Asymmetric, Negative, NotSeparating, Triangle, NonFinite };
  Kind kind;
  // Triangle violations read metric(i, j) > metric(i, k) + metric(k, j).
  Index i = 0;
  Index k = 0;
  Index j = 0;
  double excess = 0.0;
};

struct AxiomReport {
  std::size_t violation_count = 0;
  double max_triangle_excess = 0.0;
  std::vector<AxiomViolation> violations;  // at most `limit` entries

  bool ok() const { return violation_count == 0; }
};

/// Scans every metric axiom. Pairs and triples are reported once with i < j.
/// `require_separation` turns on the metric(i, j) > 0 check for i != j.
/// When `triangle_ends` is given, the triangle scan only takes i and j from
/// it (k still ranges over every point); all pairwise checks stay exhaustive.
template <typename Derived>
AxiomReport check_metric_axioms(const Eigen::MatrixBase<Derived>& m, Tolerance tol = kDefaultTolerance,
                                bool require_separation = true, std::size_t limit = 64,
                                const IndexSet* triangle_ends = nullptr) {
  using Scalar = typename Derived::Scalar;
  AxiomReport report;
  auto record = [&](AxiomViolation v) {
    ++report.violation_count;
    if (report.violations.size() < limit) report.violations.push_back(v);
  };
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidArgument, "metric matrix is not square");
  }
  const Index n = m.rows();
  for (Index i = 0; i < n; ++i) {
    if (std::abs(static_cast<double>(m(i, i))) > tol.equality) {
      record({AxiomViolation::Kind::NonzeroDiagonal, i, i, i, static_cast<double>(m(i, i))});
    }
    for (Index j = i + 1; j < n; ++j) {
      const Scalar a = m(i, j);
      const Scalar b = m(j, i);
      if (!std::isfinite(static_cast<double>(a)) || !std::isfinite(static_cast<double>(b))) {
        record({AxiomViolation::Kind::NonFinite, i, j, j, 0.0});
        continue;
      }
      if (std::abs(static_cast<double>(a - b)) > tol.equality) {
        record({AxiomViolation::Kind::Asymmetric, i, j, j, static_cast<double>(a - b)});
      }
      if (a < Scalar(0)) {
        record({AxiomViolation::Kind::Negative, i, j, j, static_cast<double>(a)});
      } else if (require_separation && a <= Scalar(0)) {
        record({AxiomViolation::Kind::NotSeparating, i, j, j, 0.0});
      }
    }
  }
  IndexSet all;
  if (!triangle_ends) {
    all.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  }
  const IndexSet& ends = triangle_ends ? *triangle_ends : all;
  for (std::size_t b = 0; b < ends.size(); ++b) {
    const Index j = ends[b];
    for (std::size_t a = 0; a < b; ++a) {
      const Index i = ends[a];
      const Scalar direct = m(i, j);
      for (Index k = 0; k < n; ++k) {
        const double excess = static_cast<double>(direct - (m(i, k) + m(k, j)));
        if (excess > tol.inequality) {
          record({AxiomViolation::Kind::Triangle, i, k, j, excess});
        }
        report.max_triangle_excess = std::max(report.max_triangle_excess, excess);
      }
    }
  }
  return report;
}

/// Infimum of the chain sums m(x, z0) + m(z0, z1) + ... + m(zl, y) over all
/// finite chains through the net, i.e. the all-pairs shortest-path closure.
///
/// Relaxation sweeps repeat until one makes no change, so the result is a
/// floating-point fixed point: re-closing it returns the same bits. Every
/// write goes to both (i, j) and (j, i), which keeps the output exactly
/// symmetric.
template <typename Derived>
Matrix<typename Derived::Scalar> chain_infimum(const Eigen::MatrixBase<Derived>& m,
                                               Tolerance tol = kDefaultTolerance) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidArgument, "chain_infimum: matrix is not square");
  }
  const Index n = m.rows();
  for (Index i = 0; i < n; ++i) {
    if (std::abs(static_cast<double>(m(i, i))) > tol.equality) {
      throw Error(ErrorCode::InvalidArgument, "chain_infimum: nonzero diagonal");
    }
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(static_cast<double>(m(i, j) - m(j, i))) > tol.equality) {
        throw Error(ErrorCode::AsymmetricInput, "chain_infimum: entry (" + std::to_string(i) + ", " +
                                                    std::to_string(j) + ") differs from its transpose");
      }
      if (m(i, j) < Scalar(0)) {
        throw Error(ErrorCode::InvalidArgument, "chain_infimum: negative entry");
      }
    }
  }

  Matrix<Scalar> d(n, n);
  for (Index j = 0; j < n; ++j) {
    d(j, j) = Scalar(0);
    for (Index i = 0; i < j; ++i) {
      const Scalar v = std::min<Scalar>(m(i, j), m(j, i));
      d(i, j) = v;
      d(j, i) = v;
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (Index k = 0; k < n; ++k) {
      for (Index j = 0; j < n; ++j) {
        const Scalar dkj = d(j, k);
        if (j == k) continue;
        for (Index i = 0; i < j; ++i) {
          const Scalar v = d(i, k) + dkj;
          if (v < d(i, j)) {
            d(i, j) = v;
            d(j, i) = v;
            changed = true;
          }
        }
      }
    }
  }
  return d;
}

/// Single-source chain infimum (dense Dijkstra). Agrees with the row of
/// chain_infimum up to summation order; used for nets too large for the
/// cubic closure and for reconstructing optimal chains.
template <typename Derived>
Vector<typename Derived::Scalar> chain_infimum_row(const Eigen::MatrixBase<Derived>& m, Index source,
                                                   std::vector<Index>* predecessor = nullptr) {
  using Scalar = typename Derived::Scalar;
  const Index n = m.rows();
  if (source < 0 || source >= n) {
    throw Error(ErrorCode::InvalidArgument, "chain_infimum_row: source out of range");
  }
  Vector<Scalar> dist = Vector<Scalar>::Constant(n, infinity<Scalar>());
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  if (predecessor) predecessor->assign(static_cast<std::size_t>(n), -1);
  dist(source) = Scalar(0);
  for (Index step = 0; step < n; ++step) {
    Index u = -1;
    for (Index v = 0; v < n; ++v) {
      if (!done[v] && (u < 0 || dist(v) < dist(u))) u = v;
    }
    if (u < 0 || dist(u) == infinity<Scalar>()) break;
    done[u] = 1;
    for (Index v = 0; v < n; ++v) {
      if (done[v]) continue;
      const Scalar cand = dist(u) + m(u, v);
      if (cand < dist(v)) {
        dist(v) = cand;
        if (predecessor) (*predecessor)[v] = u;
      }
    }
  }
  return dist;
}

/// Chain infimum built row by row from chain_infimum_row and symmetrised by
/// the entrywise minimum. Meant for nets above a few thousand points.
template <typename Derived>
Matrix<typename Derived::Scalar> chain_infimum_by_rows(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Index n = m.rows();
  Matrix<Scalar> d(n, n);
  for (Index s = 0; s < n; ++s) d.col(s) = chain_infimum_row(m, s);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) {
      const Scalar v = std::min(d(i, j), d(j, i));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

/// d(x, S) = min over s in S; +inf for empty S.
template <typename Derived>
typename Derived::Scalar point_set_distance(const Eigen::MatrixBase<Derived>& m, Index x, const IndexSet& set) {
  using Scalar = typename Derived::Scalar;
  Scalar best = infinity<Scalar>();
  for (Index s : set) best = std::min<Scalar>(best, m(x, s));
  return best;
}

/// d(A, B) = min over pairs; +inf when either side is empty.
template <typename Derived>
typename Derived::Scalar set_distance(const Eigen::MatrixBase<Derived>& m, const IndexSet& a, const IndexSet& b) {
  using Scalar = typename Derived::Scalar;
  Scalar best = infinity<Scalar>();
  for (Index x : a) {
    for (Index y : b) best = std::min<Scalar>(best, m(x, y));
  }
  return best;
}

/// Largest pairwise distance within `set`; zero for sets of size < 2.
template <typename Derived>
typename Derived::Scalar diameter(const Eigen::MatrixBase<Derived>& m, const IndexSet& set) {
  using Scalar = typename Derived::Scalar;
  Scalar best = Scalar(0);
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) best = std::max<Scalar>(best, m(set[a], set[b]));
  }
  return best;
}

}  // namespace coarse
