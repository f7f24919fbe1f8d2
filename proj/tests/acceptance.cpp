// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "coarse/cli.hpp"
#include "coarse/diagonal.hpp"
#include "coarse/expand.hpp"
#include "coarse/families.hpp"
#include "coarse/io.hpp"
#include "coarse/oracle.hpp"
#include "coarse/separation.hpp"
#include "oracles.hpp"

namespace {

using coarse::Index;

constexpr double kSlack = 1e-9;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-40s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
  std::fflush(stdout);
}

struct Built {
  coarse::DiscreteSpace space;
  coarse::Exhaustion exh;
  coarse::GrowthFunction g;
  coarse::AmplifiedMetric am;
};

Built build(const std::string& spec, std::optional<int> depth, const coarse::GrowthFunction& g) {
  auto b = coarse::load_space(spec, depth);
  auto exh = coarse::make_exhaustion(b.space, b.exhaustion);
  auto am = coarse::amplify(b.space, exh, g);
  return {std::move(b.space), std::move(exh), g, std::move(am)};
}

Outcome metric_axioms() {
  std::ostringstream detail;
  bool ok = true;
  const auto g = coarse::parse_growth("poly2");
  for (auto [spec, depth] : {std::pair<const char*, std::optional<int>>{"halfline:200:0.5", 20},
                             {"lattice:15:15:1", std::nullopt}, {"comb:30:20:harmonic", std::nullopt}}) {
    const auto b = build(spec, depth, g);
    std::size_t violations = 0;
    bool exact = true;
    for (const coarse::MetricMatrix* m : {&b.am.rho, &b.am.rho_g, &b.am.d_g}) {
      violations += coarse::check_metric_axioms(*m, {kSlack, 1e-12}).violation_count;
      exact = exact && *m == m->transpose() && (m->diagonal().array() == 0.0).all();
    }
    ok = ok && violations == 0 && exact;
    detail << spec << ": " << b.space.size() << " pts, " << violations << " violations" << (exact ? "" : ", inexact")
           << "; ";
  }
  return {ok, detail.str()};
}

Outcome closure_oracle() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(2, 10);
  double worst = 0.0;
  int tens = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = size(rng);
    tens += n == 10;
    const auto w = coarse::random_symmetric_net(n, rng);
    worst = std::max(worst, (coarse::chain_infimum(w) - oracle::simple_chain_minimum(w)).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "max |diff| = " + num(worst) + " over 50 nets (" + std::to_string(tens) +
                              " of 10 points)"};
}

Outcome magnification(const Built& b) {
  std::size_t pairs = 0, bad = 0;
  const Index size = b.space.size();
  for (int n = 0; n <= 20; ++n) {
    const double gn = static_cast<double>(b.g(n));
    for (Index y = 0; y < size; ++y) {
      if (b.exh.contains(n - 1, y)) continue;
      for (Index x = 0; x < y; ++x) {
        if (b.exh.contains(n - 1, x)) continue;
        ++pairs;
        bad += b.am.d_g(x, y) < gn * b.space.distance(x, y) - kSlack;
      }
    }
  }
  return {bad == 0 && pairs > 0, std::to_string(pairs) + " (n, pair) checks, " + std::to_string(bad) + " violations"};
}

Outcome collars(const Built& b) {
  double worst_margin = coarse::infinity<double>();
  bool ok = true;
  for (int n = 0; n <= 20; ++n) {
    const auto inner = b.exh.level(n - 1);
    const auto outer = b.exh.complement(n);
    const double gap = coarse::set_distance(b.am.d_g, inner, outer);
    if (gap == coarse::infinity<double>()) continue;
    worst_margin = std::min(worst_margin, gap - n);
    ok = ok && gap >= n - kSlack;
  }
  return {ok, "min over n of d_g(K_{n-1}, X \\ K_n) - n = " + num(worst_margin)};
}

Outcome potential(const Built& b) {
  const Index size = b.space.size();
  double slack = coarse::infinity<double>();
  for (Index y = 0; y < size; ++y) {
    const double fy = b.am.F(b.am.c.values(y));
    for (Index x = 0; x < y; ++x) {
      slack = std::min(slack, b.am.rho_g(x, y) - std::abs(b.am.F(b.am.c.values(x)) - fy));
    }
  }
  return {slack >= -kSlack, "min rho_g - |F(c(x)) - F(c(y))| = " + num(slack)};
}

Outcome step_bands() {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> count(10, 80);
  std::uniform_real_distribution<double> coord(0.0, 30.0);
  std::uniform_real_distribution<double> rise(0.0, 4.0);
  std::uniform_int_distribution<int> stride(1, 7);
  int configs = 0;
  std::size_t band_bad = 0, local_bad = 0;
  while (configs < 100) {
    const int n = count(rng);
    std::vector<std::vector<double>> coords;
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
      coords.push_back({coord(rng), coord(rng)});
      ids.push_back("r" + std::to_string(i));
    }
    const auto space = coarse::DiscreteSpace::euclidean(ids, coords);
    // Nested levels: prefixes of a random ordering grown by random strides.
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<coarse::IndexSet> levels;
    for (int k = stride(rng); k < n; k += stride(rng)) {
      coarse::IndexSet lv(order.begin(), order.begin() + k);
      std::sort(lv.begin(), lv.end());
      levels.push_back(lv);
    }
    coarse::IndexSet all(order.begin(), order.end());
    std::sort(all.begin(), all.end());
    levels.push_back(all);
    const auto exh = coarse::Exhaustion::from_levels(space, levels);
    std::vector<double> r{rise(rng)};
    for (int k = 0; k < exh.depth(); ++k) r.push_back(r.back() + rise(rng));
    const auto phi = coarse::step_function(space, {exh, r});
    for (Index x = 0; x < n; ++x) {
      const int m = exh.level_of(x);
      const double v = phi.values(x);
      band_bad += v < r[static_cast<std::size_t>(m)] - kSlack || v > r[static_cast<std::size_t>(m) + 1] + kSlack;
    }
    for (int k = 2; k <= exh.depth(); ++k) {
      for (Index x : exh.level(k - 2)) local_bad += phi.components[static_cast<std::size_t>(k)](x) != 0.0;
    }
    ++configs;
  }
  return {band_bad == 0 && local_bad == 0, std::to_string(configs) + " configs, " + std::to_string(band_bad) +
                                               " band and " + std::to_string(local_bad) + " localization violations"};
}

Outcome diagonal_escape() {
  const auto b = coarse::load_space("comb:50:100:harmonic");
  const auto comb = coarse::extract_comb(b.space, 50);
  if (!comb) return {false, "no comb extracted"};
  const auto family = coarse::standard_family(*comb);
  const auto cert = coarse::certify(*comb, family);
  std::size_t bad = 0;
  for (int n : cert.escape.index_set) {
    const int f = *cert.escape.f[static_cast<std::size_t>(n)];
    if (f != *cert.family[static_cast<std::size_t>(n)] + 1) ++bad;
    for (const auto& m : family.metrics) bad += !(m(comb->spine_point(n), comb->tooth(n, f)) < 1.0 / (n + 1));
  }
  const auto covered = cert.escape.index_set.size();
  return {bad == 0 && covered >= 45 && comb->spine_count() == 50,
          "|I_F| = " + std::to_string(covered) + " of " + std::to_string(comb->spine_count()) + " spines, " +
              std::to_string(bad) + " violations"};
}

Outcome endgame() {
  const auto b = coarse::load_space("halfline:200:0.5", 20);
  const auto exh = coarse::make_exhaustion(b.space, b.exhaustion);
  const coarse::ClosedSetPair pair(coarse::select_points(b.space, "squares:0"), coarse::select_points(b.space, "squares:1"));
  const auto g = coarse::dominating_growth(coarse::separation_demand(b.space, exh, pair, b.space.metric()));
  const auto am = coarse::amplify(b.space, exh, g);

  std::size_t checks = 0, bad = 0;
  for (int m = 1; m <= 18; ++m) {
    for (Index x = 0; x < b.space.size(); ++x) {
      if (exh.contains(m + 1, x)) continue;
      ++checks;
      const double sum = coarse::point_set_distance(am.d_g, x, pair.a()) + coarse::point_set_distance(am.d_g, x, pair.b());
      bad += sum < m - kSlack;
    }
  }
  const auto report = coarse::endgame_check(b.space, exh, pair, g, am, 1);
  std::vector<double> grid;
  for (int r = 1; r <= 17; ++r) grid.push_back(r);
  const auto verdict = coarse::higson_separated(b.space, exh, pair, am.d_g, grid);
  return {bad == 0 && checks > 0 && report.ok && verdict.verdict == coarse::Verdict::SeparatedUpToDepth,
          std::to_string(checks) + " (M, x) checks, " + std::to_string(bad) + " violations; higson " +
              std::string(coarse::to_string(verdict.verdict))};
}

Outcome classifier() {
  using coarse::Dichotomy;
  namespace fam = coarse::families;
  const bool ok = coarse::classify(fam::discrete(100)).value == Dichotomy::One &&
                  coarse::classify(fam::convergent_sequence(50)).value == Dichotomy::One &&
                  coarse::classify(fam::halfline(200, 0.5)).value == Dichotomy::Dominating &&
                  coarse::classify(fam::comb(50, 100, coarse::DecayLaw::Harmonic)).value == Dichotomy::Dominating;
  return {ok, "discrete:100 ONE, sequence ONE, halfline:200 D, comb:50:100 D expected"};
}

std::string strip_timestamp(const std::string& report) {
  std::istringstream in(report);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

Outcome determinism() {
  std::size_t spaces = 0, mismatched = 0;
  for (const char* spec : {"halfline:200:0.5", "lattice:15:15:1", "comb:30:20:harmonic", "comb:50:100:harmonic",
                           "discrete:100", "sequence:50"}) {
    const auto b = coarse::load_space(spec);
    const coarse::SpaceDescription desc{b.space, b.exhaustion};
    ++spaces;
    mismatched += !(coarse::parse_space(coarse::serialize_space(desc)) == desc);
  }
  std::size_t runs = 0, differing = 0;
  for (const char* command : {"oracle", "expand", "diagonal"}) {
    coarse::cli::RunConfig c;
    c.command = command;
    c.space = std::string(command) == "diagonal" ? "comb:20:40:harmonic" : "halfline:100:0.5";
    c.depth = std::string(command) == "expand" ? std::optional<int>(15) : std::nullopt;
    c.seed = 7;
    std::ostringstream a, b, err;
    const int sa = coarse::cli::run(c, a, err);
    const int sb = coarse::cli::run(c, b, err);
    ++runs;
    differing += sa != 0 || sb != 0 || strip_timestamp(a.str()) != strip_timestamp(b.str());
  }
  return {mismatched == 0 && differing == 0,
          std::to_string(spaces) + " spaces round-tripped (" + std::to_string(mismatched) + " mismatched), " +
              std::to_string(runs) + " commands rerun (" + std::to_string(differing) + " differing)"};
}

}  // namespace

int main() {
  criterion(1, "metric axioms of rho, rho_g, d_g", 60, metric_axioms);
  criterion(2, "closure oracle on random nets", 30, closure_oracle);

  std::optional<Built> halfline;
  const auto start = std::chrono::steady_clock::now();
  try {
    halfline.emplace(build("halfline:200:0.5", 20, coarse::parse_growth("poly2")));
  } catch (const std::exception& e) {
    std::printf("halfline bundle failed to build: %s\n", e.what());
  }
  const double build_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("      (halfline:200 bundle built in %.2fs, shared by criteria 3-5)\n", build_s);
  auto with_bundle = [&](Outcome (*check)(const Built&)) {
    return [&, check]() -> Outcome { return halfline ? check(*halfline) : Outcome{false, "no bundle"}; };
  };
  criterion(3, "magnification guarantee", 120 - build_s, with_bundle(magnification));
  criterion(4, "collar guarantee", 0, with_bundle(collars));
  criterion(5, "F-potential bound", 0, with_bundle(potential));
  criterion(6, "step-function bands and localization", 0, step_bands);
  criterion(7, "diagonal escape on comb:50:100", 0, diagonal_escape);
  criterion(8, "endgame and Higson separation", 0, endgame);
  criterion(9, "classifier dichotomy", 0, classifier);
  criterion(10, "round-trip and report determinism", 0, determinism);

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
