#include "coarse/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coarse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyLevel: return "EmptyLevel";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::NotCovering: return "NotCovering";
    case ErrorCode::NoCollar: return "NoCollar";
    case ErrorCode::DepthTooSmall: return "DepthTooSmall";
    case ErrorCode::ZeroGap: return "ZeroGap";
    case ErrorCode::NegativeArgument: return "NegativeArgument";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::GuaranteeViolation: return "GuaranteeViolation";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::MissingLimitTags: return "MissingLimitTags";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

IndexSet LimitStructure::limit_points() const {
  IndexSet out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].kind == PointKind::Limit) out.push_back(static_cast<Index>(i));
  }
  return out;
}

DiscreteSpace::DiscreteSpace(std::vector<std::string> ids, MetricMatrix metric, std::optional<LimitStructure> limits,
                             std::vector<std::vector<double>> coordinates)
    : ids_(std::move(ids)), metric_(std::move(metric)), limits_(std::move(limits)), coordinates_(std::move(coordinates)) {
  if (metric_.rows() != metric_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "metric matrix must be square");
  }
  const auto n = static_cast<std::size_t>(metric_.rows());
  if (ids_.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "point count does not match metric size");
  }
  if (!coordinates_.empty() && coordinates_.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "coordinate count does not match point count");
  }
  if (limits_) {
    if (limits_->tags.size() != n) {
      throw Error(ErrorCode::InvalidArgument, "limit tag count does not match point count");
    }
    for (const auto& tag : limits_->tags) {
      if (tag.kind == PointKind::Isolated && !tag.sequence.empty()) {
        throw Error(ErrorCode::InvalidArgument, "isolated point declares a convergent sequence");
      }
      for (Index s : tag.sequence) {
        if (s < 0 || s >= metric_.rows()) throw Error(ErrorCode::InvalidArgument, "sequence index out of range");
      }
    }
  }
}

DiscreteSpace DiscreteSpace::euclidean(std::vector<std::string> ids, std::vector<std::vector<double>> coordinates,
                                       std::optional<LimitStructure> limits) {
  const auto n = static_cast<Index>(coordinates.size());
  MetricMatrix m = MetricMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& p = coordinates[i];
    for (Index j = i + 1; j < n; ++j) {
      const auto& q = coordinates[j];
      if (p.size() != q.size()) throw Error(ErrorCode::InvalidArgument, "coordinate dimensions differ");
      double acc = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) acc += (p[k] - q[k]) * (p[k] - q[k]);
      m(i, j) = m(j, i) = std::sqrt(acc);
    }
  }
  return DiscreteSpace(std::move(ids), std::move(m), std::move(limits), std::move(coordinates));
}

DiscreteSpace DiscreteSpace::with_metric(MetricMatrix metric) const {
  return DiscreteSpace(ids_, std::move(metric), limits_, coordinates_);
}

bool operator==(const DiscreteSpace& a, const DiscreteSpace& b) {
  if (a.ids_ != b.ids_ || a.limits_ != b.limits_ || a.coordinates_ != b.coordinates_) return false;
  if (a.metric_.rows() != b.metric_.rows()) return false;
  // Bitwise: NaN never appears in a valid space, and -0.0 vs 0.0 counts as a difference.
  for (Index j = 0; j < a.metric_.cols(); ++j) {
    for (Index i = 0; i < a.metric_.rows(); ++i) {
      if (std::signbit(a.metric_(i, j)) != std::signbit(b.metric_(i, j)) || a.metric_(i, j) != b.metric_(i, j)) {
        return false;
      }
    }
  }
  return true;
}

ValidationReport validate_space(const DiscreteSpace& space, Tolerance tol) {
  ValidationReport report;
  report.axioms = check_metric_axioms(space.metric(), tol);
  if (!space.limits()) return report;
  const auto& tags = space.limits()->tags;
  for (std::size_t p = 0; p < tags.size(); ++p) {
    const auto& seq = tags[p].sequence;
    const auto limit = static_cast<Index>(p);
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (seq[k] == limit) {
        report.sequences.push_back({limit, k, "sequence contains its own limit point"});
        continue;
      }
      if (k > 0 && !(space.distance(limit, seq[k]) < space.distance(limit, seq[k - 1]))) {
        report.sequences.push_back({limit, k, "distance to limit point does not strictly decrease"});
      }
    }
  }
  return report;
}

IndexSet Exhaustion::level(int n) const {
  if (n < 0) return {};
  if (n >= depth()) {
    IndexSet all(level_of_.size());
    std::iota(all.begin(), all.end(), Index{0});
    return all;
  }
  return levels_[static_cast<std::size_t>(n)];
}

IndexSet Exhaustion::complement(int n) const {
  IndexSet out;
  for (std::size_t x = 0; x < level_of_.size(); ++x) {
    if (level_of_[x] > n) out.push_back(static_cast<Index>(x));
  }
  return out;
}

Exhaustion Exhaustion::from_levels(const DiscreteSpace& space, std::vector<IndexSet> levels, Tolerance tol) {
  const Index n = space.size();
  if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "exhaustion needs at least one level");
  Exhaustion exh;
  exh.level_of_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    auto& lvl = levels[k];
    std::sort(lvl.begin(), lvl.end());
    lvl.erase(std::unique(lvl.begin(), lvl.end()), lvl.end());
    for (Index x : lvl) {
      if (x < 0 || x >= n) throw Error(ErrorCode::InvalidArgument, "level index out of range");
    }
    if (k > 0) {
      const auto& prev = levels[k - 1];
      if (!std::includes(lvl.begin(), lvl.end(), prev.begin(), prev.end())) {
        throw Error(ErrorCode::NotNested, "K_" + std::to_string(k - 1) + " is not contained in K_" + std::to_string(k));
      }
      if (lvl.size() == prev.size()) {
        throw Error(ErrorCode::EmptyLevel, "K_" + std::to_string(k - 1) + " = K_" + std::to_string(k));
      }
    }
    for (Index x : lvl) {
      if (exh.level_of_[x] < 0) exh.level_of_[x] = static_cast<int>(k);
    }
  }
  if (static_cast<Index>(levels.back().size()) != n) {
    throw Error(ErrorCode::NotCovering, "last level does not cover the net");
  }
  exh.levels_ = std::move(levels);
  for (int k = 0; k + 1 < exh.depth(); ++k) {
    IndexSet outside;
    for (Index x = 0; x < n; ++x) {
      if (exh.level_of(x) > k + 1) outside.push_back(x);
    }
    const double gap = set_distance(space.metric(), exh.levels_[k], outside);
    if (gap <= tol.equality) {
      throw Error(ErrorCode::NoCollar, "d(K_" + std::to_string(k) + ", X \\ K_" + std::to_string(k + 1) + ") = 0");
    }
    exh.collars_.push_back(gap);
  }
  return exh;
}

Exhaustion build_exhaustion(const DiscreteSpace& space, const std::vector<double>& radii, Index center, Tolerance tol) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "no radii given");
  if (center < 0 || center >= space.size()) throw Error(ErrorCode::InvalidArgument, "center out of range");
  for (std::size_t k = 1; k < radii.size(); ++k) {
    if (radii[k] == radii[k - 1]) throw Error(ErrorCode::EmptyLevel, "duplicate radius " + std::to_string(radii[k]));
    if (radii[k] < radii[k - 1]) throw Error(ErrorCode::InvalidArgument, "radii must be strictly increasing");
  }
  std::vector<IndexSet> levels;
  levels.reserve(radii.size());
  for (double r : radii) {
    IndexSet lvl;
    for (Index x = 0; x < space.size(); ++x) {
      if (space.distance(center, x) <= r) lvl.push_back(x);
    }
    levels.push_back(std::move(lvl));
  }
  return Exhaustion::from_levels(space, std::move(levels), tol);
}

Exhaustion make_exhaustion(const DiscreteSpace& space, const ExhaustionSpec& spec, Tolerance tol) {
  if (const auto* ball = std::get_if<BallExhaustion>(&spec)) {
    return build_exhaustion(space, ball->radii, ball->center, tol);
  }
  return Exhaustion::from_levels(space, std::get<std::vector<IndexSet>>(spec), tol);
}

Band band(const Exhaustion& exh, int n) {
  if (n < -2) throw Error(ErrorCode::InvalidArgument, "band index below -2");
  Band out{n, {}};
  for (Index x = 0; x < exh.point_count(); ++x) {
    if (exh.contains(n + 2, x) && !exh.contains(n, x)) out.points.push_back(x);
  }
  return out;
}

std::vector<Band> bands(const Exhaustion& exh) {
  if (exh.depth() < 3) {
    throw Error(ErrorCode::DepthTooSmall, "bands need depth >= 3, got " + std::to_string(exh.depth()));
  }
  std::vector<Band> out;
  for (int n = 0; n + 2 <= exh.depth(); ++n) out.push_back(band(exh, n));
  return out;
}

ClosedSetPair::ClosedSetPair(IndexSet a, IndexSet b) : a_(std::move(a)), b_(std::move(b)) {
  std::sort(a_.begin(), a_.end());
  a_.erase(std::unique(a_.begin(), a_.end()), a_.end());
  std::sort(b_.begin(), b_.end());
  b_.erase(std::unique(b_.begin(), b_.end()), b_.end());
  if (!intersect(a_, b_).empty()) throw Error(ErrorCode::InvalidArgument, "closed sets A and B intersect");
}

IndexSet intersect(const IndexSet& sorted_a, const IndexSet& sorted_b) {
  IndexSet out;
  std::set_intersection(sorted_a.begin(), sorted_a.end(), sorted_b.begin(), sorted_b.end(), std::back_inserter(out));
  return out;
}

}  // namespace coarse
