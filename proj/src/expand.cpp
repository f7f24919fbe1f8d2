#include "coarse/expand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coarse {

std::vector<GuaranteeWitness> magnification_violations(const AmplifiedMetric& am, const DiscreteSpace& space,
                                                       const Exhaustion& exh, const GrowthFunction& g,
                                                       Tolerance tol) {
  // best[m] = max_{n <= m} g(n): a pair whose lower level index is m is
  // constrained by every n <= m.
  std::vector<double> best;
  std::vector<int> argbest;
  for (int n = 0; n <= exh.depth(); ++n) {
    const double v = static_cast<double>(g(n));
    if (best.empty() || v > best.back()) {
      best.push_back(v);
      argbest.push_back(n);
    } else {
      best.push_back(best.back());
      argbest.push_back(argbest.back());
    }
  }
  std::vector<GuaranteeWitness> out;
  const Index size = space.size();
  for (Index y = 0; y < size; ++y) {
    for (Index x = 0; x < y; ++x) {
      const int m = std::min(exh.level_of(x), exh.level_of(y));
      const double rhs = best[static_cast<std::size_t>(m)] * space.distance(x, y);
      if (am.d_g(x, y) < rhs - tol.inequality) {
        out.push_back({argbest[static_cast<std::size_t>(m)], x, y, am.d_g(x, y), rhs});
      }
    }
  }
  return out;
}

std::vector<GuaranteeWitness> collar_violations(const AmplifiedMetric& am, const Exhaustion& exh, Tolerance tol) {
  std::vector<GuaranteeWitness> out;
  for (int n = 1; n < exh.depth(); ++n) {
    const IndexSet inner = exh.level(n - 1);
    const IndexSet outer = exh.complement(n);
    double gap = infinity<double>();
    Index wx = -1;
    Index wy = -1;
    for (Index x : inner) {
      for (Index y : outer) {
        if (am.d_g(x, y) < gap) {
          gap = am.d_g(x, y);
          wx = x;
          wy = y;
        }
      }
    }
    if (gap < static_cast<double>(n) - tol.inequality) out.push_back({n, wx, wy, gap, static_cast<double>(n)});
  }
  return out;
}

AmplifiedMetric amplify(const DiscreteSpace& space, const Exhaustion& exh, const GrowthFunction& g, Tolerance tol) {
  if (exh.point_count() != space.size()) {
    throw Error(ErrorCode::InvalidArgument, "exhaustion does not belong to this space");
  }
  const int depth = exh.depth();
  const Index size = space.size();
  const auto& d = space.metric();

  std::vector<double> radii;
  std::vector<double> squares;
  for (int n = 0; n <= depth; ++n) {
    radii.push_back(std::max(static_cast<double>(n), diameter(d, exh.level(n))));
    squares.push_back(static_cast<double>(n) * n);
  }

  StepFunction c = step_function(space, {exh, radii});
  SpeedFunction f = make_speed_function(g, depth);

  MetricMatrix rho(size, size);
  MetricMatrix rho_prime(size, size);
  for (Index y = 0; y < size; ++y) {
    for (Index x = 0; x < size; ++x) {
      rho(x, y) = std::max(std::abs(c.values(x) - c.values(y)), d(x, y));
      rho_prime(x, y) = f(std::max(c.values(x), c.values(y))) * rho(x, y);
    }
  }
  MetricMatrix rho_g = size > kDenseClosureLimit ? chain_infimum_by_rows(rho_prime) : chain_infimum(rho_prime, tol);

  StepFunction delta = step_function(space, {exh, squares});
  MetricMatrix d_g(size, size);
  for (Index y = 0; y < size; ++y) {
    for (Index x = 0; x < size; ++x) {
      d_g(x, y) = std::max(std::abs(delta.values(x) - delta.values(y)), rho_g(x, y));
    }
  }

  AmplifiedMetric am{std::move(radii), std::move(c),      std::move(f),     std::move(rho),
                     std::move(rho_prime), std::move(rho_g), std::move(delta), std::move(d_g)};

  if (auto v = magnification_violations(am, space, exh, g, tol); !v.empty()) {
    const auto& w = v.front();
    throw GuaranteeViolation(2, w.level, w.x, w.y,
                             "d_g(x, y) = " + std::to_string(w.lhs) + " < g(n) d(x, y) = " + std::to_string(w.rhs));
  }
  if (auto v = collar_violations(am, exh, tol); !v.empty()) {
    const auto& w = v.front();
    throw GuaranteeViolation(3, w.level, w.x, w.y,
                             "d_g(K_{n-1}, X \\ K_n) = " + std::to_string(w.lhs) + " < n = " + std::to_string(w.rhs));
  }
  return am;
}

int magnification_case(const AmplifiedMetric& am, Index x, Index y) {
  std::vector<Index> pred;
  chain_infimum_row(am.rho_prime, x, &pred);
  const double s = std::min(am.c.values(x), am.c.values(y));
  for (Index z = pred[static_cast<std::size_t>(y)]; z >= 0 && z != x; z = pred[static_cast<std::size_t>(z)]) {
    if (am.c.values(z) <= 0.5 * s) return 2;
  }
  return 1;
}

MagnificationReport magnification_check(const AmplifiedMetric& am, const DiscreteSpace& space, const Exhaustion& exh,
                                        Tolerance tol) {
  MagnificationReport report;
  const Index size = space.size();
  for (int n = 0; n <= exh.depth(); ++n) {
    BandRatio entry{n, am.f(0.5 * n), infinity<double>(), -1, -1, 0, 0, 0};
    for (Index y = 0; y < size; ++y) {
      if (exh.contains(n - 1, y)) continue;
      for (Index x = 0; x < y; ++x) {
        if (exh.contains(n - 1, x)) continue;
        ++entry.pairs;
        const double rhs = entry.speed * space.distance(x, y);
        const double ratio = am.rho_g(x, y) / rhs;
        if (ratio < entry.min_ratio) {
          entry.min_ratio = ratio;
          entry.x = x;
          entry.y = y;
        }
        if (am.rho_g(x, y) < rhs - tol.inequality) {
          ++entry.violations;
          report.violations.push_back({n, x, y, am.rho_g(x, y), rhs});
        }
      }
    }
    if (entry.pairs == 0) continue;
    entry.proof_case = magnification_case(am, entry.x, entry.y);
    report.bands.push_back(entry);
  }
  return report;
}

}  // namespace coarse

namespace coarse {

BundleAudit audit_bundle(const AmplifiedMetric& am, const DiscreteSpace& space, Tolerance tol) {
  BundleAudit audit;
  audit.rho_axioms = check_metric_axioms(am.rho, tol);
  audit.rho_g_axioms = check_metric_axioms(am.rho_g, tol);
  audit.d_g_axioms = check_metric_axioms(am.d_g, tol);
  audit.exactly_symmetric = am.rho == am.rho.transpose() && am.rho_g == am.rho_g.transpose() &&
                            am.d_g == am.d_g.transpose();
  audit.zero_diagonal = (am.rho.diagonal().array() == 0.0).all() && (am.rho_g.diagonal().array() == 0.0).all() &&
                        (am.d_g.diagonal().array() == 0.0).all();

  const Index size = space.size();
  PointValues potential(size);
  for (Index x = 0; x < size; ++x) potential(x) = am.F(am.c.values(x));
  audit.potential_slack = infinity<double>();
  for (Index y = 0; y < size; ++y) {
    for (Index x = 0; x < size; ++x) {
      const double s = tol.inequality;
      if (space.distance(x, y) > am.rho(x, y) + s || am.rho(x, y) > am.rho_g(x, y) + s ||
          am.rho_g(x, y) > am.rho_prime(x, y) + s || am.rho_g(x, y) > am.d_g(x, y) + s) {
        ++audit.order_violations;
      }
      if (x == y) continue;
      const double slack = am.rho_g(x, y) - std::abs(potential(x) - potential(y));
      audit.potential_slack = std::min(audit.potential_slack, slack);
      if (slack < -s) ++audit.potential_violations;
    }
  }
  return audit;
}

}  // namespace coarse
