#include "coarse/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <vector>

#include "coarse/io.hpp"

namespace coarse {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::Parse, "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

int parse_positive(std::string_view text, std::string_view what) {
  const int v = parse_number<int>(text, what);
  if (v < 1) throw Error(ErrorCode::Parse, std::string(what) + " must be positive");
  return v;
}

std::vector<std::string> numbered_ids(std::string_view prefix, int n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids.push_back(std::string(prefix) + std::to_string(i));
  return ids;
}

LimitStructure all_limit(Index n) {
  LimitStructure limits;
  limits.tags.assign(static_cast<std::size_t>(n), LimitTag{PointKind::Limit, {}});
  return limits;
}

// Radii unit · (k + offset) for k = 0, 1, ... that strictly enlarge the ball
// and stay below the covering radius, then the covering radius itself.
BallExhaustion ball_levels(const DiscreteSpace& space, Index center, double unit, double offset,
                           std::optional<int> depth) {
  const auto row = space.metric().row(center);
  const double cover = row.maxCoeff();
  BallExhaustion out{center, {}};
  std::size_t previous = 0;
  for (int k = 0;; ++k) {
    const double r = unit * (k + offset);
    if (r >= cover) break;
    const auto count = static_cast<std::size_t>((row.array() <= r).count());
    if (count > previous) {
      out.radii.push_back(r);
      previous = count;
    }
  }
  out.radii.push_back(cover);
  if (depth) {
    if (*depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
    if (*depth > static_cast<int>(out.radii.size())) {
      throw Error(ErrorCode::InvalidArgument, "depth " + std::to_string(*depth) + " exceeds the natural depth " +
                                                  std::to_string(out.radii.size()) + " of this net");
    }
    out.radii.erase(out.radii.begin() + (*depth - 1), out.radii.end() - 1);
  }
  return out;
}

std::vector<IndexSet> prefix_levels(Index n, std::optional<int> depth) {
  const int natural = static_cast<int>(n);
  const int d = depth.value_or(natural);
  if (d < 1 || d > natural) throw Error(ErrorCode::InvalidArgument, "depth out of range for this net");
  std::vector<IndexSet> levels;
  for (int k = 0; k + 1 < d; ++k) {
    IndexSet lvl(static_cast<std::size_t>(k + 1));
    std::iota(lvl.begin(), lvl.end(), Index{0});
    levels.push_back(std::move(lvl));
  }
  IndexSet all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  levels.push_back(std::move(all));
  return levels;
}

}  // namespace

namespace families {

DiscreteSpace halfline(int n, double spacing) {
  if (n < 1 || !(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "halfline needs n >= 1 and spacing > 0");
  std::vector<std::vector<double>> coords;
  for (int i = 0; i < n; ++i) coords.push_back({i * spacing});
  return DiscreteSpace::euclidean(numbered_ids("p", n), std::move(coords), all_limit(n));
}

DiscreteSpace lattice(int w, int h, double spacing) {
  if (w < 1 || h < 1 || !(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "lattice needs positive sizes");
  std::vector<std::vector<double>> coords;
  std::vector<std::string> ids;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      coords.push_back({i * spacing, j * spacing});
      ids.push_back("q" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return DiscreteSpace::euclidean(std::move(ids), std::move(coords), all_limit(static_cast<Index>(w) * h));
}

DiscreteSpace discrete(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "discrete needs n >= 1");
  MetricMatrix m = MetricMatrix::Ones(n, n);
  m.diagonal().setZero();
  LimitStructure limits;
  limits.tags.assign(static_cast<std::size_t>(n), LimitTag{});
  return DiscreteSpace(numbered_ids("n", n), std::move(m), std::move(limits));
}

DiscreteSpace comb(int spines, int teeth, DecayLaw decay, double spacing) {
  if (spines < 1 || teeth < 1) throw Error(ErrorCode::InvalidArgument, "comb needs spines and teeth");
  if (!(spacing > 3.0)) throw Error(ErrorCode::InvalidArgument, "spine spacing must exceed 3 so teeth fit in δ-balls");
  std::vector<std::vector<double>> coords;
  std::vector<std::string> ids;
  LimitStructure limits;
  for (int n = 0; n < spines; ++n) {
    const double x = n * spacing;
    const auto anchor = static_cast<Index>(coords.size());
    coords.push_back({x, 0.0});
    ids.push_back("a" + std::to_string(n));
    limits.tags.push_back({PointKind::Limit, {}});
    for (int i = 0; i < teeth; ++i) {
      const double t = decay == DecayLaw::Harmonic ? 1.0 / (i + 1) : std::ldexp(1.0, -i);
      limits.tags[static_cast<std::size_t>(anchor)].sequence.push_back(static_cast<Index>(coords.size()));
      coords.push_back({x, t});
      ids.push_back("b" + std::to_string(n) + "_" + std::to_string(i));
      limits.tags.push_back({});
    }
  }
  return DiscreteSpace::euclidean(std::move(ids), std::move(coords), std::move(limits));
}

DiscreteSpace convergent_sequence(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sequence needs n >= 2");
  std::vector<std::vector<double>> coords{{0.0}};
  LimitStructure limits;
  limits.tags.push_back({PointKind::Limit, {}});
  for (int k = 0; k + 1 < n; ++k) {
    coords.push_back({1.0 / (k + 1)});
    limits.tags.front().sequence.push_back(k + 1);
    limits.tags.push_back({});
  }
  limits.derivative_compact = true;
  return DiscreteSpace::euclidean(numbered_ids("s", n), std::move(coords), std::move(limits));
}

}  // namespace families

SpaceBundle load_space(std::string_view spec, std::optional<int> depth) {
  const auto parts = split(spec, ':');
  const auto kind = parts.front();
  auto expect = [&](std::size_t count, std::string_view usage) {
    if (parts.size() != count) throw Error(ErrorCode::Parse, "expected " + std::string(usage));
  };
  if (kind == "halfline") {
    expect(3, "halfline:N:spacing");
    auto space = families::halfline(parse_positive(parts[1], "N"), parse_number<double>(parts[2], "spacing"));
    auto exh = ball_levels(space, 0, 1.0, 1.0, depth);
    return {std::string(spec), std::move(space), std::move(exh)};
  }
  if (kind == "lattice") {
    expect(4, "lattice:W:H:spacing");
    const double spacing = parse_number<double>(parts[3], "spacing");
    auto space = families::lattice(parse_positive(parts[1], "W"), parse_positive(parts[2], "H"), spacing);
    auto exh = ball_levels(space, 0, spacing, 1.0, depth);
    return {std::string(spec), std::move(space), std::move(exh)};
  }
  if (kind == "discrete") {
    expect(2, "discrete:N");
    auto space = families::discrete(parse_positive(parts[1], "N"));
    auto levels = prefix_levels(space.size(), depth);
    return {std::string(spec), std::move(space), std::move(levels)};
  }
  if (kind == "comb") {
    expect(4, "comb:N:teeth:decay");
    DecayLaw decay;
    if (parts[3] == "harmonic") {
      decay = DecayLaw::Harmonic;
    } else if (parts[3] == "geometric") {
      decay = DecayLaw::Geometric;
    } else {
      throw Error(ErrorCode::Parse, "comb decay must be 'harmonic' or 'geometric'");
    }
    constexpr double kSpacing = 4.0;
    auto space = families::comb(parse_positive(parts[1], "N"), parse_positive(parts[2], "teeth"), decay, kSpacing);
    auto exh = ball_levels(space, 0, kSpacing, 0.5, depth);
    return {std::string(spec), std::move(space), std::move(exh)};
  }
  if (kind == "sequence") {
    expect(2, "sequence:N");
    auto space = families::convergent_sequence(parse_positive(parts[1], "N"));
    if (depth && *depth != 1) throw Error(ErrorCode::InvalidArgument, "a convergent sequence is compact: depth is 1");
    const Index n = space.size();
    return {std::string(spec), std::move(space), prefix_levels(n, 1)};
  }
  const std::string path(spec);
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::Parse, "unknown space family or missing file: " + path);
  auto desc = read_space_file(path);
  if (!desc.exhaustion) throw Error(ErrorCode::Parse, "space file has no exhaustion section");
  return {path, std::move(desc.space), std::move(*desc.exhaustion)};
}

GrowthFunction parse_growth(std::string_view spec) {
  if (spec == "one") return GrowthFunction::constant(1);
  if (spec.starts_with("const:")) return GrowthFunction::constant(parse_number<std::int64_t>(spec.substr(6), "constant"));
  if (spec.starts_with("poly:")) {
    std::vector<double> coeffs;
    for (auto c : split(spec.substr(5), ',')) coeffs.push_back(parse_number<double>(c, "coefficient"));
    return GrowthFunction::polynomial(std::move(coeffs));
  }
  if (spec.starts_with("poly")) {
    const int degree = parse_number<int>(spec.substr(4), "degree");
    if (degree < 0) throw Error(ErrorCode::Parse, "degree must be nonnegative");
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
    coeffs.front() += 1.0;
    coeffs.back() += 1.0;
    return GrowthFunction::polynomial(std::move(coeffs));
  }
  if (spec.starts_with("exp")) return GrowthFunction::exponential(1.0, parse_number<double>(spec.substr(3), "base"));
  if (spec.starts_with("list:")) {
    std::vector<std::int64_t> values;
    for (auto v : split(spec.substr(5), ',')) values.push_back(parse_number<std::int64_t>(v, "value"));
    return GrowthFunction(std::move(values));
  }
  throw Error(ErrorCode::Parse, "unknown growth function '" + std::string(spec) + "'");
}

IndexSet select_points(const DiscreteSpace& space, std::string_view selector) {
  IndexSet out;
  const auto& coords = space.coordinates();
  auto first_coord = [&](Index x) {
    if (coords.empty()) throw Error(ErrorCode::InvalidArgument, "selector needs coordinates");
    return coords[static_cast<std::size_t>(x)].front();
  };
  constexpr double kSlack = 1e-9;
  if (selector.starts_with("indices:")) {
    for (auto v : split(selector.substr(8), ',')) {
      const auto x = parse_number<Index>(v, "index");
      if (x < 0 || x >= space.size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
      out.push_back(x);
    }
  } else if (selector.starts_with("coords:")) {
    for (auto v : split(selector.substr(7), ',')) {
      const double target = parse_number<double>(v, "coordinate");
      for (Index x = 0; x < space.size(); ++x) {
        if (std::abs(first_coord(x) - target) <= kSlack) out.push_back(x);
      }
    }
  } else if (selector.starts_with("squares:")) {
    const double offset = parse_number<double>(selector.substr(8), "offset");
    for (Index x = 0; x < space.size(); ++x) {
      const double v = first_coord(x) - offset;
      const double k = std::round(std::sqrt(std::max(v, 0.0)));
      if (k >= 1.0 && std::abs(k * k - v) <= kSlack) out.push_back(x);
    }
  } else if (selector.starts_with("every:")) {
    const auto parts = split(selector.substr(6), ':');
    if (parts.size() != 2) throw Error(ErrorCode::Parse, "expected every:STEP:OFFSET");
    const double step = parse_number<double>(parts[0], "step");
    const double offset = parse_number<double>(parts[1], "offset");
    if (!(step > 0.0)) throw Error(ErrorCode::Parse, "step must be positive");
    for (Index x = 0; x < space.size(); ++x) {
      const double q = (first_coord(x) - offset) / step;
      if (q >= -kSlack && std::abs(q - std::round(q)) * step <= kSlack) out.push_back(x);
    }
  } else {
    throw Error(ErrorCode::Parse, "unknown point selector '" + std::string(selector) + "'");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace coarse
