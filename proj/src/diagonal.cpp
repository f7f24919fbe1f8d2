#include "coarse/diagonal.hpp"

#include <algorithm>
#include <cmath>

namespace coarse {

CombSpace CombSpace::from_parts(DiscreteSpace space, IndexSet spine, std::vector<IndexSet> teeth) {
  if (spine.empty()) throw Error(ErrorCode::InvalidArgument, "comb needs at least one spine point");
  if (teeth.size() != spine.size()) throw Error(ErrorCode::InvalidArgument, "one tooth sequence per spine point");
  CombSpace comb(std::move(space));
  const auto& d = comb.space_.metric();
  for (std::size_t n = 0; n < spine.size(); ++n) {
    double nearest = infinity<double>();
    for (std::size_t m = 0; m < spine.size(); ++m) {
      if (m != n) nearest = std::min(nearest, d(spine[n], spine[m]));
    }
    const double radius = nearest / 3.0;
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "spine points must be distinct");
    const Index a = spine[n];
    for (std::size_t i = 0; i < teeth[n].size(); ++i) {
      const Index b = teeth[n][i];
      if (b == a) throw Error(ErrorCode::InvalidArgument, "tooth coincides with its spine point");
      if (!(d(a, b) < radius)) {
        throw Error(ErrorCode::InvalidArgument, "tooth " + std::to_string(i) + " of spine " + std::to_string(n) +
                                                    " lies outside its neighbourhood");
      }
      if (i > 0 && !(d(a, b) < d(a, teeth[n][i - 1]))) {
        throw Error(ErrorCode::InvalidArgument, "tooth distances must strictly decrease");
      }
    }
    comb.radii_.push_back(radius);
  }
  comb.spine_ = std::move(spine);
  comb.teeth_ = std::move(teeth);
  return comb;
}

int CombSpace::tooth_count() const {
  std::size_t least = teeth_.front().size();
  for (const auto& t : teeth_) least = std::min(least, t.size());
  return static_cast<int>(least);
}

std::optional<CombSpace> extract_comb(const DiscreteSpace& space, int max_spines) {
  if (!space.limits()) throw Error(ErrorCode::MissingLimitTags, "comb extraction needs declared limit structure");
  const auto& tags = space.limits()->tags;
  IndexSet candidates;
  for (std::size_t p = 0; p < tags.size(); ++p) {
    if (tags[p].kind == PointKind::Limit && !tags[p].sequence.empty()) candidates.push_back(static_cast<Index>(p));
  }
  if (candidates.empty() || max_spines < 1) return std::nullopt;

  const auto& d = space.metric();
  IndexSet chosen{candidates.front()};
  std::vector<double> spread(candidates.size(), infinity<double>());
  while (static_cast<int>(chosen.size()) < max_spines && chosen.size() < candidates.size()) {
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      spread[c] = std::min(spread[c], d(candidates[c], chosen.back()));
      if (spread[c] > best) {
        best = spread[c];
        pick = c;
      }
    }
    if (!(best > 0.0)) break;
    chosen.push_back(candidates[pick]);
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<IndexSet> teeth;
  for (Index a : chosen) {
    double nearest = infinity<double>();
    for (Index other : chosen) {
      if (other != a) nearest = std::min(nearest, d(a, other));
    }
    IndexSet kept;
    for (Index b : tags[static_cast<std::size_t>(a)].sequence) {
      if (d(a, b) < nearest / 3.0 && (kept.empty() || d(a, b) < d(a, kept.back()))) kept.push_back(b);
    }
    teeth.push_back(std::move(kept));
  }
  return CombSpace::from_parts(space, std::move(chosen), std::move(teeth));
}

MetricFamily MetricFamily::make(std::vector<std::string> names, std::vector<MetricMatrix> metrics, Tolerance tol) {
  if (names.size() != metrics.size()) throw Error(ErrorCode::InvalidArgument, "one name per metric");
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    // Above kExhaustiveTriangleLimit points the triangle scan takes its end
    // points from an evenly strided subset; pairwise axioms stay exhaustive.
    const Index n = metrics[k].rows();
    IndexSet ends;
    if (n > kExhaustiveTriangleLimit) {
      const Index stride = (n + kTriangleSample - 1) / kTriangleSample;
      for (Index i = 0; i < n; i += stride) ends.push_back(i);
    }
    if (!check_metric_axioms(metrics[k], tol, true, 1, ends.empty() ? nullptr : &ends).ok()) {
      throw Error(ErrorCode::InvalidArgument, "family member '" + names[k] + "' is not a metric");
    }
  }
  return MetricFamily{std::move(names), std::move(metrics)};
}

MetricMatrix tooth_warped_metric(const CombSpace& comb, double warp) {
  const auto& space = comb.space();
  if (space.coordinates().empty()) throw Error(ErrorCode::InvalidArgument, "tooth warping needs coordinates");
  auto coords = space.coordinates();
  const double spines = comb.spine_count();
  for (int n = 0; n < comb.spine_count(); ++n) {
    const auto& anchor = space.coordinates()[static_cast<std::size_t>(comb.spine_point(n))];
    const double scale = 1.0 + warp * n / spines;
    for (Index b : comb.teeth()[static_cast<std::size_t>(n)]) {
      auto& p = coords[static_cast<std::size_t>(b)];
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = anchor[k] + scale * (p[k] - anchor[k]);
    }
  }
  return DiscreteSpace::euclidean(space.ids(), std::move(coords)).metric();
}

MetricFamily standard_family(const CombSpace& comb, double warp) {
  const auto& base = comb.space().metric();
  return MetricFamily::make({"base", "doubled", "tooth-warped"},
                            {base, MetricMatrix(2.0 * base), tooth_warped_metric(comb, warp)});
}

Modulus modulus(const CombSpace& comb, const MetricMatrix& metric) {
  Modulus out;
  for (int n = 0; n < comb.spine_count(); ++n) {
    const Index a = comb.spine_point(n);
    const auto& teeth = comb.teeth()[static_cast<std::size_t>(n)];
    const double bound = 1.0 / (n + 1);
    bool decreasing = true;
    for (std::size_t i = 1; i < teeth.size(); ++i) {
      decreasing = decreasing && metric(a, teeth[i]) < metric(a, teeth[i - 1]);
    }
    std::size_t m = teeth.size();
    while (m > 0 && metric(a, teeth[m - 1]) < bound) --m;
    if (!decreasing || m == teeth.size()) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(static_cast<int>(m));
    }
  }
  return out;
}

Modulus family_modulus(const std::vector<Modulus>& moduli) {
  if (moduli.empty()) throw Error(ErrorCode::EmptyFamily, "family modulus of an empty family");
  Modulus out = moduli.front();
  for (const auto& g : moduli) {
    if (g.size() != out.size()) throw Error(ErrorCode::InvalidArgument, "moduli have different lengths");
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (!out[n] || !g[n]) {
        out[n] = std::nullopt;
      } else {
        out[n] = std::max(*out[n], *g[n]);
      }
    }
  }
  return out;
}

EscapeFragment escape(const Modulus& family, int tooth_count) {
  EscapeFragment out;
  for (std::size_t n = 0; n < family.size(); ++n) {
    const int index = static_cast<int>(n);
    if (!family[n]) {
      out.f.push_back(std::nullopt);
      out.undefined.push_back(index);
    } else if (*family[n] + 1 >= tooth_count) {
      out.f.push_back(std::nullopt);
      out.exhausted.push_back(index);
    } else {
      out.f.push_back(*family[n] + 1);
      out.index_set.push_back(index);
    }
  }
  return out;
}

EscapeCertificate certify(const CombSpace& comb, const MetricFamily& family) {
  EscapeCertificate cert;
  cert.names = family.names;
  for (const auto& m : family.metrics) cert.moduli.push_back(modulus(comb, m));
  cert.family = family_modulus(cert.moduli);
  cert.escape = escape(cert.family, comb.tooth_count());
  cert.closeness_ok = true;
  for (int n : cert.escape.index_set) {
    const Index a = comb.spine_point(n);
    const Index b = comb.tooth(n, *cert.escape.f[static_cast<std::size_t>(n)]);
    cert.b_f.push_back(b);
    double worst = 0.0;
    for (const auto& m : family.metrics) worst = std::max(worst, m(a, b));
    cert.closeness.push_back(worst);
    cert.closeness_ok = cert.closeness_ok && worst < 1.0 / (n + 1);
  }
  return cert;
}

NonseparationReport nonseparation_witness(const CombSpace& comb, const MetricFamily& family,
                                          const EscapeCertificate& cert) {
  constexpr std::size_t kMaxMembers = 12;
  if (family.size() == 0) throw Error(ErrorCode::EmptyFamily, "witness needs a nonempty family");
  if (family.size() > kMaxMembers) throw Error(ErrorCode::InvalidArgument, "family too large to enumerate subfamilies");
  NonseparationReport report;
  if (cert.escape.index_set.empty()) report.warnings.push_back("empty index set: the check is vacuous");

  std::vector<Modulus> moduli;
  for (const auto& m : family.metrics) moduli.push_back(modulus(comb, m));

  const std::size_t subsets = std::size_t{1} << family.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    SubfamilyWitness w;
    std::vector<Modulus> members;
    for (std::size_t k = 0; k < family.size(); ++k) {
      if (mask & (std::size_t{1} << k)) {
        w.members.push_back(family.names[k]);
        members.push_back(moduli[k]);
      }
    }
    const Modulus g = family_modulus(members);
    for (std::size_t n = 0; n < g.size() && n < cert.escape.f.size(); ++n) {
      if (g[n] && cert.escape.f[n] && *g[n] < *cert.escape.f[n]) ++w.recomputed_index_set;
    }
    for (int n : cert.escape.index_set) {
      const auto f = cert.escape.f[static_cast<std::size_t>(n)];
      if (!f || *f >= static_cast<int>(comb.teeth()[static_cast<std::size_t>(n)].size())) {
        w.failures.emplace_back(n, "<no tooth>");
        continue;
      }
      const Index a = comb.spine_point(n);
      const Index b = comb.tooth(n, *f);
      for (std::size_t k = 0; k < family.size(); ++k) {
        if (!(mask & (std::size_t{1} << k))) continue;
        const double dist = family.metrics[k](a, b);
        w.worst_scaled = std::max(w.worst_scaled, dist * (n + 1));
        if (!(dist < 1.0 / (n + 1))) w.failures.emplace_back(n, family.names[k]);
      }
    }
    report.ok = report.ok && w.failures.empty();
    report.subfamilies.push_back(std::move(w));
  }
  return report;
}

std::vector<std::int64_t> separation_demand(const DiscreteSpace& space, const Exhaustion& exh,
                                            const ClosedSetPair& pair, const MetricMatrix& metric) {
  if (metric.rows() != space.size()) throw Error(ErrorCode::InvalidArgument, "metric size does not match the space");
  std::vector<std::int64_t> out;
  for (const Band& band : bands(exh)) {
    const IndexSet a = intersect(pair.a(), band.points);
    const IndexSet b = intersect(pair.b(), band.points);
    if (a.empty() || b.empty()) {
      out.push_back(0);
      continue;
    }
    const double gap = set_distance(metric, a, b);
    if (!(gap > 0.0)) throw Error(ErrorCode::InvalidArgument, "A and B share a point within a band");
    out.push_back(static_cast<std::int64_t>(std::ceil(band.index / gap)));
  }
  return out;
}

GrowthFunction dominating_growth(const std::vector<std::int64_t>& demand) {
  std::vector<std::int64_t> prefix;
  for (std::size_t n = 0; n < demand.size(); ++n) {
    const auto square = static_cast<std::int64_t>(n * n);
    prefix.push_back(std::max(demand[n], square) + 1);
  }
  return GrowthFunction(std::move(prefix), PolynomialTail{{1.0, 0.0, 1.0}});
}

EndgameReport endgame_check(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                            const GrowthFunction& g, int n_start, Tolerance tol) {
  // Fail on the precondition before paying for the amplification.
  const auto demand = separation_demand(space, exh, pair, space.metric());
  for (std::size_t n = static_cast<std::size_t>(std::max(0, n_start + 1)); n < demand.size(); ++n) {
    if (g(static_cast<int>(n)) < demand[n]) {
      throw Error(ErrorCode::PreconditionFailed, "g(" + std::to_string(n) + ") = " + std::to_string(g(static_cast<int>(n))) +
                                                     " < h(" + std::to_string(n) + ") = " + std::to_string(demand[n]));
    }
  }
  return endgame_check(space, exh, pair, g, amplify(space, exh, g, tol), n_start, tol);
}

EndgameReport endgame_check(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                            const GrowthFunction& g, const AmplifiedMetric& am, int n_start, Tolerance tol) {
  if (n_start < 0) throw Error(ErrorCode::InvalidArgument, "N must be nonnegative");
  if (pair.a().empty() || pair.b().empty()) throw Error(ErrorCode::EmptySide, "A and B must both be nonempty");
  EndgameReport report;
  report.n_start = n_start;
  report.demand = separation_demand(space, exh, pair, space.metric());
  for (std::size_t n = static_cast<std::size_t>(n_start + 1); n < report.demand.size(); ++n) {
    if (g(static_cast<int>(n)) < report.demand[n]) {
      throw Error(ErrorCode::PreconditionFailed, "g(" + std::to_string(n) + ") < h(" + std::to_string(n) + ")");
    }
  }

  const Index size = space.size();
  std::vector<Index> nearest_a(static_cast<std::size_t>(size));
  std::vector<Index> nearest_b(static_cast<std::size_t>(size));
  PointValues sum(size);
  for (Index x = 0; x < size; ++x) {
    auto argmin = [&](const IndexSet& set) {
      Index best = set.front();
      for (Index s : set) {
        if (am.d_g(x, s) < am.d_g(x, best)) best = s;
      }
      return best;
    };
    nearest_a[x] = argmin(pair.a());
    nearest_b[x] = argmin(pair.b());
    sum(x) = am.d_g(x, nearest_a[x]) + am.d_g(x, nearest_b[x]);
  }

  for (int m = n_start; m <= exh.depth() - 2; ++m) {
    EndgameLevel level{m, 0, infinity<double>(), 0, 0, 0};
    for (Index x = 0; x < size; ++x) {
      if (exh.contains(m + 1, x)) continue;
      ++level.points;
      level.min_sum = std::min(level.min_sum, sum(x));
      const int lower = std::min(exh.level_of(nearest_a[x]), exh.level_of(nearest_b[x]));
      if (lower <= m) {
        ++level.collar_case;
      } else {
        ++level.band_case;
      }
      if (sum(x) < m - tol.inequality) ++level.violations;
    }
    report.ok = report.ok && level.violations == 0;
    report.levels.push_back(level);
  }
  return report;
}

std::string_view to_string(Dichotomy value) { return value == Dichotomy::One ? "ONE" : "D"; }

Classification classify(const DiscreteSpace& space) {
  if (!space.limits()) throw Error(ErrorCode::MissingLimitTags, "classification needs declared limit structure");
  Classification out{Dichotomy::One, space.limits()->limit_points(), space.limits()->derivative_compact};
  if (!out.derivative.empty() && !out.derivative_compact) out.value = Dichotomy::Dominating;
  return out;
}

}  // namespace coarse
