#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coarse/separation.hpp"
#include "coarse/tolerance.hpp"

namespace coarse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Environment variable overriding the default inequality tolerance.
inline constexpr const char* kToleranceEnv = "COARSE_TOLERANCE";

struct RunConfig {
  std::string command;  // validate | expand | separate | diagonal | classify | oracle
  std::string space;    // family spec or space file
  std::optional<int> depth;
  std::string output;   // report path; stdout when empty
  std::string dump;     // expand: labeled CSV dump path
  Tolerance tolerance;

  std::string growth = "poly2";  // separate also accepts "auto"
  std::string set_a;
  std::string set_b;
  std::string metric = "base";   // separate: base | amplified
  double eps = kDefaultSmirnovEps;
  std::vector<double> r_grid;    // empty: default grid
  int n_start = 1;
  std::string expect;            // separate: separated | not_separated

  double warp = 1.0;

  int points = 8;
  int trials = 50;
  std::uint64_t seed = 7;
};

/// Applies COARSE_TOLERANCE, when set, to the inequality slack.
Tolerance tolerance_from_env(Tolerance base);

/// Executes one command. Reports go to config.output (or `out`), diagnostics
/// to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace coarse::cli
