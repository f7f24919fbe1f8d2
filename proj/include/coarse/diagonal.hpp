#pragma once

// Dominating-function machinery.
//
// Lower side: on a comb (a closed discrete spine a_n, each with teeth
// b_{n,i} → a_n) every metric d has a convergence modulus
//   g_d(n) = min{m : ∀ i >= m, d(a_n, b_{n,i}) < 1/(n+1)},
// and any f escaping the pointwise maximum g_F of finitely many moduli picks
// teeth B_f that no d ∈ F can uniformly separate from the spine.
//
// Upper side: for disjoint closed A, B the band demand
//   h_{A,B}(n) = ceil(n / d(A ∩ Δ_n, B ∩ Δ_n))
// tells how fast g must grow for d_g to Higson-separate A from B.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coarse/expand.hpp"
#include "coarse/growth.hpp"
#include "coarse/space.hpp"

namespace coarse {

/// Spine, teeth and the disjoint neighbourhoods B(a_n, δ_n),
/// δ_n = ρ(a_n, A \ {a_n}) / 3 under the base metric ρ of `space`.
class CombSpace {
 public:
  /// Validates: δ_n > 0, every tooth inside B(a_n, δ_n) \ {a_n}, tooth
  /// distances strictly decreasing.
  static CombSpace from_parts(DiscreteSpace space, IndexSet spine, std::vector<IndexSet> teeth);

  const DiscreteSpace& space() const { return space_; }
  const IndexSet& spine() const { return spine_; }
  const std::vector<IndexSet>& teeth() const { return teeth_; }
  const std::vector<double>& radii() const { return radii_; }
  int spine_count() const { return static_cast<int>(spine_.size()); }
  /// Teeth available on every spine.
  int tooth_count() const;

  Index spine_point(int n) const { return spine_[static_cast<std::size_t>(n)]; }
  Index tooth(int n, int i) const { return teeth_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]; }

 private:
  CombSpace(DiscreteSpace space) : space_(std::move(space)) {}
  DiscreteSpace space_;
  IndexSet spine_;
  std::vector<IndexSet> teeth_;
  std::vector<double> radii_;
};

/// Picks up to `max_spines` declared limit points with nonempty convergent
/// sequences, greedily maximising the minimum pairwise distance, and keeps
/// the declared sequence points that fall inside each δ_n-ball. nullopt when
/// the space declares no such limit point.
std::optional<CombSpace> extract_comb(const DiscreteSpace& space, int max_spines);

inline constexpr Index kExhaustiveTriangleLimit = 1000;
inline constexpr Index kTriangleSample = 256;

struct MetricFamily {
  std::vector<std::string> names;
  std::vector<MetricMatrix> metrics;

  /// Rejects members that fail the metric axioms (triangle inequality
  /// sampled on nets above kExhaustiveTriangleLimit points).
  static MetricFamily make(std::vector<std::string> names, std::vector<MetricMatrix> metrics,
                           Tolerance tol = kDefaultTolerance);
  std::size_t size() const { return metrics.size(); }
};

/// Re-embeds tooth b_{n,i} at a_n + (1 + warp · n / N)(b_{n,i} - a_n) and
/// returns the Euclidean metric. Needs coordinates.
MetricMatrix tooth_warped_metric(const CombSpace& comb, double warp);

/// {base, 2 × base, tooth-warped}.
MetricFamily standard_family(const CombSpace& comb, double warp = 1.0);

using Modulus = std::vector<std::optional<int>>;

/// g_d; nullopt where the last tooth is not yet within 1/(n+1) or the tooth
/// distances do not strictly decrease under `metric`.
Modulus modulus(const CombSpace& comb, const MetricMatrix& metric);

/// Pointwise maximum; undefined entries propagate.
Modulus family_modulus(const std::vector<Modulus>& moduli);

struct EscapeFragment {
  std::vector<std::optional<int>> f;  // g_F(n) + 1 where the comb has that tooth
  std::vector<int> index_set;         // I_F
  std::vector<int> exhausted;         // g_F(n) + 1 >= I_max
  std::vector<int> undefined;         // g_F(n) undefined
};

EscapeFragment escape(const Modulus& family, int tooth_count);

struct EscapeCertificate {
  std::vector<std::string> names;
  std::vector<Modulus> moduli;  // g_d per member
  Modulus family;               // g_F
  EscapeFragment escape;
  IndexSet b_f;                 // b_{n, f(n)} for n ∈ I_F
  std::vector<double> closeness;  // max_{d ∈ F} d(a_n, b_{n,f(n)}) for n ∈ I_F
  bool closeness_ok = false;      // closeness[n] < 1/(n+1) throughout
};

EscapeCertificate certify(const CombSpace& comb, const MetricFamily& family);

struct SubfamilyWitness {
  std::vector<std::string> members;
  std::size_t recomputed_index_set = 0;  // |I_F'| for this subfamily
  double worst_scaled = 0.0;             // max (n+1) · d(a_n, b_{n,f(n)}); < 1 on success
  std::vector<std::pair<int, std::string>> failures;  // (n, metric)
};

struct NonseparationReport {
  std::vector<SubfamilyWitness> subfamilies;
  std::vector<std::string> warnings;
  bool ok = true;
};

/// For every nonempty subfamily F' and every d ∈ F', checks
/// d(a_n, b_{n,f(n)}) < 1/(n+1) on the certificate's index set.
NonseparationReport nonseparation_witness(const CombSpace& comb, const MetricFamily& family,
                                          const EscapeCertificate& cert);

/// h_{A,B}(n) for n = 0 .. depth - 2; 0 where a band misses A or B.
std::vector<std::int64_t> separation_demand(const DiscreteSpace& space, const Exhaustion& exh,
                                            const ClosedSetPair& pair, const MetricMatrix& metric);

/// g(n) = max{h(n), n²} + 1 on the demand's range, n² + 1 beyond it.
GrowthFunction dominating_growth(const std::vector<std::int64_t>& demand);

struct EndgameLevel {
  int m;
  std::size_t points = 0;  // x ∉ K_{M+1}
  double min_sum = 0.0;    // min d_g(x, A) + d_g(x, B)
  std::size_t collar_case = 0;
  std::size_t band_case = 0;
  std::size_t violations = 0;
};

struct EndgameReport {
  int n_start = 0;
  std::vector<std::int64_t> demand;
  std::vector<EndgameLevel> levels;
  bool ok = true;
};

/// Verifies d_g(x, A) + d_g(x, B) >= M for M ∈ [N, depth - 2] and x ∉ K_{M+1}.
/// Throws PreconditionFailed unless g(n) >= h_{A,B}(n) for n ∈ (N, depth - 2].
EndgameReport endgame_check(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                            const GrowthFunction& g, int n_start, Tolerance tol = kDefaultTolerance);
/// Same, reusing an amplified metric built from (space, exh, g).
EndgameReport endgame_check(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                            const GrowthFunction& g, const AmplifiedMetric& am, int n_start,
                            Tolerance tol = kDefaultTolerance);

enum class Dichotomy { One, Dominating };
std::string_view to_string(Dichotomy value);  // "ONE" / "D"

struct Classification {
  Dichotomy value;
  IndexSet derivative;  // declared non-isolated points
  bool derivative_compact;
};

/// ONE when the declared derivative is empty or flagged compact, D otherwise.
Classification classify(const DiscreteSpace& space);

}  // namespace coarse
