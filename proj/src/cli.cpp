#include "coarse/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>

#include "coarse/diagonal.hpp"
#include "coarse/expand.hpp"
#include "coarse/families.hpp"
#include "coarse/io.hpp"
#include "coarse/oracle.hpp"
#include "coarse/separation.hpp"

namespace coarse::cli {
namespace {

struct Outcome {
  Json body;
  bool pass = true;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json numbers(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(report_number(v));
  return out;
}

Json axioms_json(const AxiomReport& r) {
  Json out;
  out["violations"] = r.violation_count;
  out["max_triangle_excess"] = report_number(r.max_triangle_excess);
  Json first = Json::array();
  for (const auto& v : r.violations) {
    first.push_back({{"kind", static_cast<int>(v.kind)}, {"i", v.i}, {"k", v.k}, {"j", v.j},
                     {"excess", report_number(v.excess)}});
  }
  out["first"] = std::move(first);
  return out;
}

Json witnesses_json(const std::vector<GuaranteeWitness>& ws, std::size_t limit = 32) {
  Json out = Json::array();
  for (std::size_t k = 0; k < ws.size() && k < limit; ++k) {
    const auto& w = ws[k];
    out.push_back({{"level", w.level}, {"x", w.x}, {"y", w.y}, {"lhs", report_number(w.lhs)},
                   {"rhs", report_number(w.rhs)}});
  }
  return out;
}

Json optional_levels(const std::vector<std::optional<int>>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v ? Json(*v) : Json(nullptr));
  return out;
}

Json verdict_json(const SeparationVerdict& v) {
  Json out;
  out["kind"] = to_string(v.kind);
  out["verdict"] = to_string(v.verdict);
  if (v.kind == SeparationKind::Smirnov) {
    out["distance"] = report_number(v.distance);
    out["threshold"] = report_number(v.threshold);
  } else {
    out["r_grid"] = numbers(v.r_grid);
    out["witness_levels"] = optional_levels(v.witness_levels);
  }
  out["per_band"] = numbers(v.per_band);
  return out;
}

Outcome run_validate(const RunConfig& config) {
  const auto bundle = load_space(config.space, config.depth);
  Outcome o;
  const auto report = validate_space(bundle.space, config.tolerance);
  o.body["points"] = bundle.space.size();
  o.body["axioms"] = axioms_json(report.axioms);
  Json seq = Json::array();
  for (const auto& s : report.sequences) {
    seq.push_back({{"limit_point", s.limit_point}, {"position", s.position}, {"reason", s.reason}});
  }
  o.body["sequences"] = std::move(seq);
  o.pass = report.empty();
  try {
    const auto exh = make_exhaustion(bundle.space, bundle.exhaustion, config.tolerance);
    o.body["exhaustion"] = {{"valid", true}, {"depth", exh.depth()}, {"collars", numbers(exh.collars())}};
  } catch (const Error& e) {
    o.body["exhaustion"] = {{"valid", false}, {"error", e.what()}};
    o.pass = false;
  }
  return o;
}

Outcome run_expand(const RunConfig& config) {
  const auto bundle = load_space(config.space, config.depth);
  const auto exh = make_exhaustion(bundle.space, bundle.exhaustion, config.tolerance);
  const auto g = parse_growth(config.growth);
  Outcome o;
  o.body["points"] = bundle.space.size();
  o.body["depth"] = exh.depth();
  o.body["growth"] = g.describe();

  const auto am = amplify(bundle.space, exh, g, config.tolerance);

  o.body["level_targets"] = numbers(am.level_targets);
  o.body["speed_knots"] = numbers(am.f.knots());
  const auto audit = audit_bundle(am, bundle.space, config.tolerance);
  o.body["axioms"] = {{"rho", axioms_json(audit.rho_axioms)},
                      {"rho_g", axioms_json(audit.rho_g_axioms)},
                      {"d_g", axioms_json(audit.d_g_axioms)},
                      {"exactly_symmetric", audit.exactly_symmetric},
                      {"zero_diagonal", audit.zero_diagonal}};
  o.body["order_violations"] = audit.order_violations;
  o.body["potential"] = {{"violations", audit.potential_violations},
                         {"min_slack", report_number(audit.potential_slack)}};

  const auto g2 = magnification_violations(am, bundle.space, exh, g, config.tolerance);
  const auto g3 = collar_violations(am, exh, config.tolerance);
  o.body["guarantee_magnification"] = {{"violations", g2.size()}, {"first", witnesses_json(g2)}};
  o.body["guarantee_collar"] = {{"violations", g3.size()}, {"first", witnesses_json(g3)}};

  const auto mag = magnification_check(am, bundle.space, exh, config.tolerance);
  Json bands = Json::array();
  for (const auto& b : mag.bands) {
    bands.push_back({{"level", b.level}, {"speed", report_number(b.speed)}, {"min_ratio", report_number(b.min_ratio)},
                     {"x", b.x}, {"y", b.y}, {"case", b.proof_case}, {"pairs", b.pairs},
                     {"violations", b.violations}});
  }
  o.body["magnification"] = {{"bands", std::move(bands)}, {"violations", mag.violations.size()}};
  o.pass = audit.ok() && g2.empty() && g3.empty() && mag.ok();

  if (!config.dump.empty()) {
    std::ofstream dump(config.dump);
    if (!dump) throw Error(ErrorCode::InvalidArgument, "cannot write " + config.dump);
    write_csv_block(dump, "c", am.c.values);
    write_csv_block(dump, "delta", am.delta.values);
    const auto& knots = am.f.knots();
    write_csv_block(dump, "f_knots", PointValues(Eigen::Map<const PointValues>(knots.data(), static_cast<Index>(knots.size()))));
    for (std::size_t n = 0; n < am.c.components.size(); ++n) {
      write_csv_block(dump, "c_plateau_" + std::to_string(n), am.c.components[n]);
    }
    write_csv_block(dump, "rho", am.rho);
    write_csv_block(dump, "rho_prime", am.rho_prime);
    write_csv_block(dump, "rho_g", am.rho_g);
    write_csv_block(dump, "d_g", am.d_g);
  }
  return o;
}

Outcome run_separate(const RunConfig& config) {
  const auto bundle = load_space(config.space, config.depth);
  const auto exh = make_exhaustion(bundle.space, bundle.exhaustion, config.tolerance);
  if (config.set_a.empty() || config.set_b.empty()) {
    throw Error(ErrorCode::InvalidArgument, "separate needs --set-a and --set-b");
  }
  const ClosedSetPair pair(select_points(bundle.space, config.set_a), select_points(bundle.space, config.set_b));
  Outcome o;
  o.body["points"] = bundle.space.size();
  o.body["depth"] = exh.depth();
  o.body["a_size"] = pair.a().size();
  o.body["b_size"] = pair.b().size();

  const auto r_grid = config.r_grid.empty() ? default_r_grid(exh) : config.r_grid;
  MetricMatrix metric = bundle.space.metric();
  if (config.metric == "amplified") {
    const auto demand = exh.depth() >= 3 ? separation_demand(bundle.space, exh, pair, bundle.space.metric())
                                         : std::vector<std::int64_t>{};
    const auto g = config.growth == "auto" ? dominating_growth(demand) : parse_growth(config.growth);
    o.body["growth"] = g.describe();
    o.body["demand"] = demand;
    const auto am = amplify(bundle.space, exh, g, config.tolerance);
    try {
      const auto endgame = endgame_check(bundle.space, exh, pair, g, am, config.n_start, config.tolerance);
      Json levels = Json::array();
      for (const auto& l : endgame.levels) {
        levels.push_back({{"m", l.m}, {"points", l.points}, {"min_sum", report_number(l.min_sum)},
                          {"collar_case", l.collar_case}, {"band_case", l.band_case}, {"violations", l.violations}});
      }
      o.body["endgame"] = {{"n_start", endgame.n_start}, {"ok", endgame.ok}, {"levels", std::move(levels)}};
      o.pass = endgame.ok;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionFailed) throw;
      o.body["endgame"] = {{"ok", false}, {"error", e.what()}};
      o.pass = false;
    }
    metric = am.d_g;
  } else if (config.metric != "base") {
    throw Error(ErrorCode::InvalidArgument, "--metric must be 'base' or 'amplified'");
  }
  o.body["metric"] = config.metric;

  const auto smirnov = smirnov_separated(bundle.space, exh, pair, metric, config.eps);
  const auto higson = higson_separated(bundle.space, exh, pair, metric, r_grid);
  o.body["smirnov"] = verdict_json(smirnov);
  o.body["higson"] = verdict_json(higson);
  if (!config.expect.empty()) {
    const auto want = config.expect;
    if (want != "separated" && want != "not_separated") {
      throw Error(ErrorCode::InvalidArgument, "--expect must be 'separated' or 'not_separated'");
    }
    const bool separated = higson.verdict == Verdict::SeparatedUpToDepth;
    o.pass = o.pass && (separated == (want == "separated"));
  }
  return o;
}

Outcome run_diagonal(const RunConfig& config) {
  const auto bundle = load_space(config.space, config.depth);
  const auto comb = extract_comb(bundle.space, static_cast<int>(bundle.space.size()));
  if (!comb) throw Error(ErrorCode::InvalidArgument, "space declares no limit point with a convergent sequence");
  const auto family = standard_family(*comb, config.warp);
  const auto cert = certify(*comb, family);
  const auto witness = nonseparation_witness(*comb, family, cert);

  Outcome o;
  o.body["spines"] = comb->spine_count();
  o.body["teeth"] = comb->tooth_count();
  o.body["warp"] = report_number(config.warp);
  o.body["family"] = family.names;
  Json moduli;
  for (std::size_t k = 0; k < cert.names.size(); ++k) moduli[cert.names[k]] = optional_levels(cert.moduli[k]);
  o.body["moduli"] = std::move(moduli);
  o.body["family_modulus"] = optional_levels(cert.family);
  o.body["escape"] = {{"f", optional_levels(cert.escape.f)},
                      {"index_set", cert.escape.index_set},
                      {"exhausted", cert.escape.exhausted},
                      {"undefined", cert.escape.undefined}};
  o.body["b_f"] = cert.b_f;
  o.body["closeness"] = numbers(cert.closeness);
  o.body["closeness_ok"] = cert.closeness_ok;
  Json subs = Json::array();
  for (const auto& s : witness.subfamilies) {
    Json failures = Json::array();
    for (const auto& [n, name] : s.failures) failures.push_back({{"n", n}, {"metric", name}});
    subs.push_back({{"members", s.members}, {"index_set", s.recomputed_index_set},
                    {"worst_scaled", report_number(s.worst_scaled)}, {"failures", std::move(failures)}});
  }
  o.body["witness"] = {{"ok", witness.ok}, {"warnings", witness.warnings}, {"subfamilies", std::move(subs)}};
  o.pass = cert.closeness_ok && witness.ok;
  return o;
}

Outcome run_oracle(const RunConfig& config) {
  if (config.points < 2 || config.points > 10) throw Error(ErrorCode::InvalidArgument, "--points must be in [2, 10]");
  if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "--trials must be positive");
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> size_dist(2, config.points);
  Outcome o;
  double worst = 0.0;
  std::size_t disagreeing = 0;
  Json sizes = Json::array();
  for (int t = 0; t < config.trials; ++t) {
    const int n = size_dist(rng);
    const auto net = random_symmetric_net(n, rng);
    const auto closed = chain_infimum(net, config.tolerance);
    const auto brute = exhaustive_chain_minimum(net);
    const double diff = (closed - brute).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
    if (diff > config.tolerance.equality) ++disagreeing;
    sizes.push_back(n);
  }
  o.body["trials"] = config.trials;
  o.body["max_points"] = config.points;
  o.body["sizes"] = std::move(sizes);
  o.body["max_abs_difference"] = report_number(worst);
  o.body["disagreeing_trials"] = disagreeing;
  o.pass = disagreeing == 0;
  return o;
}

}  // namespace

Tolerance tolerance_from_env(Tolerance base) {
  if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, std::string(kToleranceEnv) + " must be a positive number");
    }
    base.inequality = v;
  }
  return base;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Json report;
  report["timestamp"] = utc_timestamp();
  report["tool"] = "coarse";
  report["command"] = config.command;
  report["seed"] = config.seed;
  report["space"] = config.space;
  report["tolerance"] = {{"inequality", config.tolerance.inequality}, {"equality", config.tolerance.equality}};

  Outcome outcome;
  try {
    if (!(config.tolerance.inequality > 0.0) || !(config.tolerance.equality > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    }
    if (config.command == "validate") {
      outcome = run_validate(config);
    } else if (config.command == "expand") {
      outcome = run_expand(config);
    } else if (config.command == "separate") {
      outcome = run_separate(config);
    } else if (config.command == "diagonal") {
      outcome = run_diagonal(config);
    } else if (config.command == "classify") {
      const auto bundle = load_space(config.space, config.depth);
      const auto c = classify(bundle.space);
      outcome.body["class"] = to_string(c.value);
      outcome.body["derivative_size"] = c.derivative.size();
      outcome.body["derivative_compact"] = c.derivative_compact;
      out << to_string(c.value) << "\n";
    } else if (config.command == "oracle") {
      outcome = run_oracle(config);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + config.command + "'");
    }
  } catch (const GuaranteeViolation& v) {
    err << "check failed: " << v.what() << "\n";
    report["failure"] = {{"code", to_string(v.code())}, {"guarantee", v.guarantee}, {"level", v.level},
                         {"x", v.x}, {"y", v.y}, {"message", v.what()}};
    outcome.pass = false;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  report["pass"] = outcome.pass;
  report["result"] = std::move(outcome.body);
  const std::string text = report.dump(2) + "\n";
  if (config.output.empty()) {
    if (config.command != "classify") out << text;
  } else {
    std::ofstream file(config.output);
    if (!file) {
      err << "error: cannot write " << config.output << "\n";
      return kExitConfigError;
    }
    file << text;
  }
  return outcome.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace coarse::cli
