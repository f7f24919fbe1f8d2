#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "coarse/diagonal.hpp"
#include "coarse/families.hpp"

namespace {

using coarse::ClosedSetPair;
using coarse::CombSpace;
using coarse::IndexSet;
using coarse::Modulus;

// Four spines at (10 n, 0); spine 0 carries teeth at height 1/(i+2), the
// others at 1/(i+1), ten teeth each.
CombSpace hand_comb() {
  std::vector<std::vector<double>> coords;
  std::vector<std::string> ids;
  IndexSet spine;
  std::vector<IndexSet> teeth(4);
  for (int n = 0; n < 4; ++n) {
    spine.push_back(static_cast<coarse::Index>(coords.size()));
    coords.push_back({10.0 * n, 0.0});
    ids.push_back("a" + std::to_string(n));
    for (int i = 0; i < 10; ++i) {
      teeth[n].push_back(static_cast<coarse::Index>(coords.size()));
      coords.push_back({10.0 * n, n == 0 ? 1.0 / (i + 2) : 1.0 / (i + 1)});
      ids.push_back("b" + std::to_string(n) + "_" + std::to_string(i));
    }
  }
  return CombSpace::from_parts(coarse::DiscreteSpace::euclidean(ids, coords), spine, teeth);
}

CombSpace comb_of(const std::string& spec, int spines) {
  const auto b = coarse::load_space(spec);
  return *coarse::extract_comb(b.space, spines);
}

TEST(Modulus, HandExamples) {
  const auto comb = hand_comb();
  const auto g = coarse::modulus(comb, comb.space().metric());
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[0], 0);
  EXPECT_EQ(g[1], 2);
  EXPECT_EQ(g[3], 4);

  const coarse::MetricMatrix doubled = 2.0 * comb.space().metric();
  const auto g2 = coarse::modulus(comb, doubled);
  for (std::size_t n = 0; n < g.size(); ++n) EXPECT_GE(*g2[n], *g[n]);
}

TEST(Modulus, UndefinedWhenLastToothTooFar) {
  const auto comb = hand_comb();
  const coarse::MetricMatrix stretched = 5.0 * comb.space().metric();
  const auto g = coarse::modulus(comb, stretched);
  EXPECT_EQ(g[0], 4);
  EXPECT_FALSE(g[3].has_value());
}

TEST(Modulus, MonotoneUnderScaling) {
  const auto comb = comb_of("comb:12:40:harmonic", 12);
  const auto base = coarse::modulus(comb, comb.space().metric());
  for (double lambda : {1.0, 1.5, 2.0, 3.0}) {
    const coarse::MetricMatrix scaled = lambda * comb.space().metric();
    const auto g = coarse::modulus(comb, scaled);
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (g[n] && base[n]) EXPECT_GE(*g[n], *base[n]);
      if (base[n] == std::nullopt) EXPECT_FALSE(g[n].has_value());
    }
  }
}

TEST(FamilyModulus, PointwiseMaximum) {
  const Modulus a{1, 5, 2}, b{3, 1, 4};
  EXPECT_EQ(coarse::family_modulus({a}), a);
  EXPECT_EQ(coarse::family_modulus({a, b}), (Modulus{3, 5, 4}));
  EXPECT_EQ(coarse::family_modulus({a, Modulus{0, std::nullopt, 0}}), (Modulus{1, std::nullopt, 2}));
  try {
    coarse::family_modulus({});
    FAIL();
  } catch (const coarse::Error& e) {
    EXPECT_EQ(e.code(), coarse::ErrorCode::EmptyFamily);
  }
}

TEST(FamilyModulus, StandardFamilyDominatesMembers) {
  const auto comb = comb_of("comb:20:60:harmonic", 20);
  const auto family = coarse::standard_family(comb);
  std::vector<Modulus> moduli;
  for (const auto& m : family.metrics) moduli.push_back(coarse::modulus(comb, m));
  const auto g_f = coarse::family_modulus(moduli);
  for (std::size_t n = 0; n < g_f.size(); ++n) {
    std::optional<int> expected = 0;
    for (const auto& g : moduli) expected = (expected && g[n]) ? std::optional(std::max(*expected, *g[n])) : std::nullopt;
    EXPECT_EQ(g_f[n], expected);
    for (const auto& g : moduli) {
      if (g_f[n]) EXPECT_GE(*g_f[n], *g[n]);
    }
  }
}

TEST(Escape, FragmentExamples) {
  const auto zero = coarse::escape(Modulus(5, 0), 10);
  EXPECT_EQ(zero.index_set, (std::vector<int>{0, 1, 2, 3, 4}));
  for (const auto& f : zero.f) EXPECT_EQ(f, 1);

  const auto edge = coarse::escape(Modulus{2, 9, std::nullopt, 8}, 10);
  EXPECT_EQ(edge.index_set, (std::vector<int>{0, 3}));
  EXPECT_EQ(edge.exhausted, (std::vector<int>{1}));
  EXPECT_EQ(edge.undefined, (std::vector<int>{2}));
  EXPECT_EQ(edge.f[3], 9);
}

TEST(Escape, StandardFamilyOnFiftyTeeth) {
  const auto comb = comb_of("comb:30:50:harmonic", 30);
  const auto family = coarse::standard_family(comb);
  const auto cert = coarse::certify(comb, family);
  EXPECT_TRUE(cert.closeness_ok);
  ASSERT_FALSE(cert.escape.index_set.empty());
  for (std::size_t k = 0; k < cert.escape.index_set.size(); ++k) {
    const int n = cert.escape.index_set[k];
    const auto a = comb.spine_point(n);
    const auto b = cert.b_f[k];
    double worst = 0.0;
    for (const auto& m : family.metrics) worst = std::max(worst, m(a, b));
    EXPECT_EQ(cert.closeness[k], worst);
    EXPECT_LT(worst, 1.0 / (n + 1));
  }
}

TEST(NonseparationWitness, SingleMetricHolds) {
  const auto comb = comb_of("comb:15:40:geometric", 15);
  const auto family = coarse::MetricFamily::make({"base"}, {comb.space().metric()});
  const auto cert = coarse::certify(comb, family);
  const auto report = coarse::nonseparation_witness(comb, family, cert);
  EXPECT_TRUE(report.ok);
  ASSERT_EQ(report.subfamilies.size(), 1u);
  EXPECT_LT(report.subfamilies.front().worst_scaled, 1.0);
  EXPECT_EQ(report.subfamilies.front().recomputed_index_set, cert.escape.index_set.size());
}

TEST(NonseparationWitness, FailsExactlyWhereEscapeFallsShort) {
  const auto comb = comb_of("comb:20:80:harmonic", 20);
  const auto family = coarse::standard_family(comb);
  auto cert = coarse::certify(comb, family);
  std::set<int> tampered;
  for (int n : cert.escape.index_set) {
    const int g = *cert.family[static_cast<std::size_t>(n)];
    if (n % 3 == 0 && g >= 1) {
      cert.escape.f[static_cast<std::size_t>(n)] = g - 1;
      tampered.insert(n);
    }
  }
  ASSERT_FALSE(tampered.empty());
  const auto report = coarse::nonseparation_witness(comb, family, cert);
  EXPECT_FALSE(report.ok);
  std::set<int> failed;
  for (const auto& w : report.subfamilies) {
    for (const auto& [n, name] : w.failures) failed.insert(n);
  }
  EXPECT_EQ(failed, tampered);
}

TEST(NonseparationWitness, EmptyIndexSetWarns) {
  const auto comb = hand_comb();
  const auto family = coarse::MetricFamily::make({"base"}, {comb.space().metric()});
  auto cert = coarse::certify(comb, family);
  cert.escape.index_set.clear();
  const auto report = coarse::nonseparation_witness(comb, family, cert);
  EXPECT_TRUE(report.ok);
  EXPECT_EQ(report.warnings.size(), 1u);
}

TEST(CombSpace, NeighbourhoodsAreDisjoint) {
  for (const char* spec : {"comb:25:30:harmonic", "comb:25:30:geometric"}) {
    const auto comb = comb_of(spec, 25);
    const auto& d = comb.space().metric();
    for (coarse::Index x = 0; x < comb.space().size(); ++x) {
      int inside = 0;
      for (int n = 0; n < comb.spine_count(); ++n) inside += d(x, comb.spine_point(n)) < comb.radii()[n];
      EXPECT_LE(inside, 1);
    }
    for (int n = 0; n < comb.spine_count(); ++n) {
      for (auto b : comb.teeth()[n]) {
        EXPECT_GT(d(comb.spine_point(n), b), 0.0);
        EXPECT_LT(d(comb.spine_point(n), b), comb.radii()[n]);
      }
    }
  }
}

TEST(CombSpace, RejectsToothOutsideNeighbourhood) {
  const auto s = coarse::DiscreteSpace::euclidean({"a", "b", "t"}, {{0, 0}, {3, 0}, {0, 2}});
  EXPECT_THROW(CombSpace::from_parts(s, {0, 1}, {{2}, {}}), coarse::Error);
}

TEST(ExtractComb, NeedsLimitTags) {
  coarse::DiscreteSpace bare({"x", "y"}, coarse::families::discrete(2).metric());
  EXPECT_THROW(coarse::extract_comb(bare, 3), coarse::Error);
  EXPECT_FALSE(coarse::extract_comb(coarse::families::discrete(5), 3).has_value());
}

struct Demand {
  coarse::DiscreteSpace space = coarse::families::halfline(200, 0.5);
  coarse::Exhaustion exh = coarse::make_exhaustion(space, coarse::load_space("halfline:200:0.5", 20).exhaustion);
};

TEST(SeparationDemand, CeilingOfLevelOverGap) {
  Demand d;
  // Δ_3 = (4, 6] holds 5.0 and 5.5.
  const auto h = coarse::separation_demand(d.space, d.exh, ClosedSetPair({10}, {11}), d.space.metric());
  EXPECT_EQ(h[3], 6);
  EXPECT_EQ(h[2], 0);
  EXPECT_EQ(h[4], 0);
}

TEST(SeparationDemand, SquaresAndSuccessors) {
  Demand d;
  const ClosedSetPair pair(coarse::select_points(d.space, "squares:0"), coarse::select_points(d.space, "squares:1"));
  const auto h = coarse::separation_demand(d.space, d.exh, pair, d.space.metric());
  ASSERT_EQ(h.size(), 19u);
  for (int n = 0; n < 19; ++n) {
    const double lo = n + 1.0;
    const double hi = n + 2 >= 19 ? 1e9 : n + 3.0;
    bool both = false;
    for (int k = 1; k * k + 1 <= 99; ++k) both |= k * k > lo && k * k + 1 <= hi;
    EXPECT_EQ(h[n], both ? n : 0) << n;
  }
}

TEST(Endgame, SquaresPassWithDominatingGrowth) {
  Demand d;
  const ClosedSetPair pair(coarse::select_points(d.space, "squares:0"), coarse::select_points(d.space, "squares:1"));
  const auto g = coarse::dominating_growth(coarse::separation_demand(d.space, d.exh, pair, d.space.metric()));
  const auto report = coarse::endgame_check(d.space, d.exh, pair, g, 1);
  EXPECT_TRUE(report.ok);
  ASSERT_EQ(report.levels.size(), 18u);
  for (const auto& level : report.levels) {
    EXPECT_GE(level.min_sum, level.m - 1e-9);
    EXPECT_EQ(level.collar_case + level.band_case, level.points);
  }
}

TEST(Endgame, LastLevelOnly) {
  Demand d;
  const ClosedSetPair pair({0}, {3});
  const auto report = coarse::endgame_check(d.space, d.exh, pair, coarse::parse_growth("poly2"), 18);
  EXPECT_TRUE(report.ok);
  EXPECT_EQ(report.levels.size(), 1u);
}

TEST(Endgame, UnitGrowthFailsThePrecondition) {
  Demand d;
  const ClosedSetPair pair(coarse::select_points(d.space, "squares:0"), coarse::select_points(d.space, "squares:1"));
  try {
    coarse::endgame_check(d.space, d.exh, pair, coarse::GrowthFunction::constant(1), 1);
    FAIL();
  } catch (const coarse::Error& e) {
    EXPECT_EQ(e.code(), coarse::ErrorCode::PreconditionFailed);
  }
}

TEST(DominatingGrowth, Shape) {
  const auto g = coarse::dominating_growth({0, 7, 0, 2});
  EXPECT_EQ(g(0), 1);
  EXPECT_EQ(g(1), 8);
  EXPECT_EQ(g(2), 5);
  EXPECT_EQ(g(3), 10);
  EXPECT_EQ(g(6), 37);
}

TEST(Classify, Dichotomy) {
  EXPECT_EQ(coarse::classify(coarse::families::discrete(100)).value, coarse::Dichotomy::One);
  EXPECT_EQ(coarse::classify(coarse::families::halfline(200, 0.5)).value, coarse::Dichotomy::Dominating);
  const auto seq = coarse::classify(coarse::families::convergent_sequence(20));
  EXPECT_EQ(seq.value, coarse::Dichotomy::One);
  EXPECT_EQ(seq.derivative, (IndexSet{0}));
  EXPECT_EQ(coarse::classify(coarse::families::comb(50, 100, coarse::DecayLaw::Harmonic)).value,
            coarse::Dichotomy::Dominating);
  EXPECT_EQ(coarse::to_string(coarse::Dichotomy::One), "ONE");
  EXPECT_EQ(coarse::to_string(coarse::Dichotomy::Dominating), "D");

  coarse::DiscreteSpace bare({"x"}, coarse::MetricMatrix::Zero(1, 1));
  try {
    coarse::classify(bare);
    FAIL();
  } catch (const coarse::Error& e) {
    EXPECT_EQ(e.code(), coarse::ErrorCode::MissingLimitTags);
  }
}

// D exactly when a 50-spine comb with a nonempty escape set survives the
// standard family; spaces without declared sequences have no such comb.
bool has_comb_witness(const coarse::DiscreteSpace& space) {
  const auto comb = coarse::extract_comb(space, 50);
  if (!comb || comb->spine_count() < 50) return false;
  const auto family = coarse::standard_family(*comb);
  const auto cert = coarse::certify(*comb, family);
  return !cert.escape.index_set.empty() && coarse::nonseparation_witness(*comb, family, cert).ok;
}

TEST(Classify, AgreesWithCombWitness) {
  const std::vector<coarse::DiscreteSpace> spaces{
      coarse::families::discrete(60), coarse::families::convergent_sequence(60),
      coarse::families::comb(50, 60, coarse::DecayLaw::Harmonic), coarse::families::comb(55, 40, coarse::DecayLaw::Geometric)};
  for (const auto& s : spaces) {
    EXPECT_EQ(coarse::classify(s).value == coarse::Dichotomy::Dominating, has_comb_witness(s));
  }
}

}  // namespace
