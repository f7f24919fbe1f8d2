#pragma once

// Metric amplification. From a base metric d, an exhaustion ⟨K_n⟩ and a
// growth function g, builds the proper metric
//
//   d_g(x, y) = max{|δ(x) - δ(y)|, ρ_g(x, y)}
//
// where ρ_g is the chain infimum of ρ'_g(x, y) = f(max{c(x), c(y)}) · ρ(x, y),
// ρ(x, y) = max{|c(x) - c(y)|, d(x, y)}, c is the step function for
// R_n = max{n, diam K_n} and δ the step function for n².

#include <vector>

#include "coarse/growth.hpp"
#include "coarse/space.hpp"
#include "coarse/urysohn.hpp"

namespace coarse {

struct AmplifiedMetric {
  std::vector<double> level_targets;  // R_0 ... R_depth
  StepFunction c;
  SpeedFunction f;
  MetricMatrix rho;
  MetricMatrix rho_prime;
  MetricMatrix rho_g;
  StepFunction delta;
  MetricMatrix d_g;

  double F(double s) const { return f.antiderivative(s); }
};

/// Nets larger than this are closed row by row instead of by dense sweeps.
inline constexpr Index kDenseClosureLimit = 2000;

struct GuaranteeWitness {
  int level;
  Index x;
  Index y;
  double lhs;
  double rhs;
};

/// Magnification guarantee: d_g(x, y) >= g(n) · d(x, y) for x, y outside K_{n-1}.
std::vector<GuaranteeWitness> magnification_violations(const AmplifiedMetric& am, const DiscreteSpace& space,
                                                       const Exhaustion& exh, const GrowthFunction& g,
                                                       Tolerance tol = kDefaultTolerance);

/// Collar guarantee: d_g(K_{n-1}, X \ K_n) >= n.
std::vector<GuaranteeWitness> collar_violations(const AmplifiedMetric& am, const Exhaustion& exh,
                                                Tolerance tol = kDefaultTolerance);

/// Builds every layer and verifies both guarantees before returning.
/// Throws GuaranteeViolation with the first offending pair otherwise.
AmplifiedMetric amplify(const DiscreteSpace& space, const Exhaustion& exh, const GrowthFunction& g,
                        Tolerance tol = kDefaultTolerance);

struct BandRatio {
  int level;             // n: pairs range over X \ K_{n-1}
  double speed;          // f(n/2)
  double min_ratio;      // min ρ_g(x, y) / (f(n/2) · d(x, y))
  Index x;               // pair attaining min_ratio
  Index y;
  int proof_case;        // 1: optimal chain stays above c-level s/2, 2: it dips below
  std::size_t pairs;
  std::size_t violations;
};

struct MagnificationReport {
  std::vector<BandRatio> bands;
  std::vector<GuaranteeWitness> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks ρ_g(x, y) >= f(n/2) · d(x, y) for every n and every pair outside
/// K_{n-1}, recording the tightest ratio per level.
MagnificationReport magnification_check(const AmplifiedMetric& am, const DiscreteSpace& space, const Exhaustion& exh,
                                        Tolerance tol = kDefaultTolerance);

/// Which case of the magnification argument the optimal ρ'_g chain from x to
/// y falls under.
int magnification_case(const AmplifiedMetric& am, Index x, Index y);

}  // namespace coarse

namespace coarse {

/// Everything amplify promises about the bundle beyond the magnification and collar guarantees.
struct BundleAudit {
  AxiomReport rho_axioms;
  AxiomReport rho_g_axioms;
  AxiomReport d_g_axioms;
  bool exactly_symmetric = false;  // ρ, ρ_g, d_g equal their transposes bit for bit
  bool zero_diagonal = false;
  std::size_t order_violations = 0;  // d <= ρ <= ρ_g <= ρ'_g, ρ_g <= d_g
  std::size_t potential_violations = 0;  // ρ_g(x, y) >= |F(c(x)) - F(c(y))|
  double potential_slack = 0.0;  // min of ρ_g - |ΔF| over pairs

  bool ok() const {
    return rho_axioms.ok() && rho_g_axioms.ok() && d_g_axioms.ok() && exactly_symmetric && zero_diagonal &&
           order_violations == 0 && potential_violations == 0;
  }
};

BundleAudit audit_bundle(const AmplifiedMetric& am, const DiscreteSpace& space, Tolerance tol = kDefaultTolerance);

}  // namespace coarse
