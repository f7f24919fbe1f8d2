#pragma once

// Built-in benchmark spaces, their default exhaustions, and the small text
// grammars the CLI accepts for spaces, growth functions and point sets.

#include <optional>
#include <string>
#include <string_view>

#include "coarse/growth.hpp"
#include "coarse/space.hpp"

namespace coarse {

enum class DecayLaw { Harmonic, Geometric };

namespace families {

/// Points i · spacing, i < n, on [0, ∞). Every point is a limit point of the
/// ambient half-line; the derivative is unbounded.
DiscreteSpace halfline(int n, double spacing);
/// w × h grid in the plane, Euclidean metric.
DiscreteSpace lattice(int w, int h, double spacing);
/// n points at mutual distance 1, all isolated.
DiscreteSpace discrete(int n);
/// Spine a_n = (spacing · n, 0) with teeth b_{n,i} = (spacing · n, t_i),
/// t_i = 1/(i+1) (harmonic) or 2^-i (geometric). Points are stored spine
/// major: a_0, b_{0,0}, ..., a_1, ...
DiscreteSpace comb(int spines, int teeth, DecayLaw decay, double spacing = 4.0);
/// {0} ∪ {1/(k+1) : k < n - 1}: a single convergent sequence with its limit.
DiscreteSpace convergent_sequence(int n);

}  // namespace families

struct SpaceBundle {
  std::string name;
  DiscreteSpace space;
  ExhaustionSpec exhaustion;
};

/// Parses `halfline:N:spacing`, `lattice:W:H:spacing`, `discrete:N`,
/// `comb:N:teeth:decay`, `sequence:N`, or a path to a space file. `depth`
/// truncates the default exhaustion: the first depth - 1 levels are kept and
/// the last level is the whole net.
SpaceBundle load_space(std::string_view spec, std::optional<int> depth = std::nullopt);

/// `one`, `const:K`, `polyK` (n^K + 1), `poly:c0,c1,...`, `expB` (ceil B^n),
/// `list:v0,v1,...` (constant continuation).
GrowthFunction parse_growth(std::string_view spec);

/// `indices:i,j,...`, `coords:x,y,...`, `squares:OFFSET` (first coordinate
/// k² + OFFSET, k >= 1), `every:STEP:OFFSET` (first coordinate ≡ OFFSET mod STEP).
IndexSet select_points(const DiscreteSpace& space, std::string_view selector);

}  // namespace coarse
