#include "coarse/separation.hpp"

#include <algorithm>

namespace coarse {
namespace {

void check_inputs(const DiscreteSpace& space, const ClosedSetPair& pair, const MetricMatrix& metric) {
  if (pair.a().empty() || pair.b().empty()) throw Error(ErrorCode::EmptySide, "A and B must both be nonempty");
  if (metric.rows() != space.size() || metric.cols() != space.size()) {
    throw Error(ErrorCode::InvalidArgument, "metric size does not match the space");
  }
  for (Index x : pair.a()) {
    if (x < 0 || x >= space.size()) throw Error(ErrorCode::InvalidArgument, "A index out of range");
  }
  for (Index x : pair.b()) {
    if (x < 0 || x >= space.size()) throw Error(ErrorCode::InvalidArgument, "B index out of range");
  }
}

IndexSet outside(const Exhaustion& exh, const IndexSet& set, int n) {
  IndexSet out;
  for (Index x : set) {
    if (!exh.contains(n, x)) out.push_back(x);
  }
  return out;
}

}  // namespace

std::string_view to_string(SeparationKind kind) {
  return kind == SeparationKind::Smirnov ? "smirnov" : "higson";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::SeparatedUpToDepth: return "separated_up_to_depth";
    case Verdict::NotSeparated: return "not_separated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SeparationVerdict smirnov_separated(const DiscreteSpace& space, const ClosedSetPair& pair, const MetricMatrix& metric,
                                    double eps) {
  check_inputs(space, pair, metric);
  SeparationVerdict out;
  out.kind = SeparationKind::Smirnov;
  out.threshold = eps;
  out.distance = set_distance(metric, pair.a(), pair.b());
  out.verdict = out.distance >= eps ? Verdict::SeparatedUpToDepth : Verdict::NotSeparated;
  return out;
}

SeparationVerdict smirnov_separated(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                                    const MetricMatrix& metric, double eps) {
  SeparationVerdict out = smirnov_separated(space, pair, metric, eps);
  for (int n = 0; n + 2 <= exh.depth(); ++n) {
    out.per_band.push_back(set_distance(metric, outside(exh, pair.a(), n), outside(exh, pair.b(), n)));
  }
  return out;
}

std::vector<double> default_r_grid(const Exhaustion& exh) {
  std::vector<double> grid;
  for (int r = 1; r <= exh.depth() - 3; ++r) grid.push_back(r);
  return grid;
}

SeparationVerdict higson_separated(const DiscreteSpace& space, const Exhaustion& exh, const ClosedSetPair& pair,
                                   const MetricMatrix& metric, const std::vector<double>& r_grid) {
  check_inputs(space, pair, metric);
  SeparationVerdict out;
  out.kind = SeparationKind::Higson;
  out.r_grid = r_grid;

  const Index size = space.size();
  PointValues witness(size);
  for (Index x = 0; x < size; ++x) {
    witness(x) = point_set_distance(metric, x, pair.a()) + point_set_distance(metric, x, pair.b());
  }
  for (int n = 0; n + 2 <= exh.depth(); ++n) {
    double best = infinity<double>();
    for (Index x = 0; x < size; ++x) {
      if (!exh.contains(n, x)) best = std::min(best, witness(x));
    }
    out.per_band.push_back(best);
  }

  bool all = !r_grid.empty() && !out.per_band.empty();
  for (double r : r_grid) {
    std::optional<int> level;
    for (std::size_t n = 0; n < out.per_band.size(); ++n) {
      if (out.per_band[n] > r) {
        level = static_cast<int>(n);
        break;
      }
    }
    all = all && level.has_value();
    out.witness_levels.push_back(level);
  }
  if (r_grid.empty() || out.per_band.empty()) {
    out.verdict = Verdict::Inconclusive;
  } else {
    out.verdict = all ? Verdict::SeparatedUpToDepth : Verdict::NotSeparated;
  }
  return out;
}

OscillationResult slowly_oscillating_check(const DiscreteSpace& space, const Exhaustion& exh,
                                           const PointValues& values, const MetricMatrix& metric, double r,
                                           double eps) {
  if (!(r > 0.0) || !(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "r and eps must be positive");
  const Index size = space.size();
  if (values.size() != size || metric.rows() != size) {
    throw Error(ErrorCode::InvalidArgument, "values or metric do not match the space");
  }
  PointValues oscillation(size);
  for (Index x = 0; x < size; ++x) {
    double lo = infinity<double>();
    double hi = -infinity<double>();
    for (Index y = 0; y < size; ++y) {
      if (metric(x, y) <= r) {
        lo = std::min(lo, values(y));
        hi = std::max(hi, values(y));
      }
    }
    oscillation(x) = hi - lo;
  }
  OscillationResult out;
  for (int n = 0; n + 2 <= exh.depth(); ++n) {
    double worst = 0.0;
    for (Index x = 0; x < size; ++x) {
      if (!exh.contains(n, x)) worst = std::max(worst, oscillation(x));
    }
    out.tail_oscillation.push_back(worst);
    if (!out.level && worst < eps) out.level = n;
  }
  return out;
}

}  // namespace coarse
