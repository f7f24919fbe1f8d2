#include "coarse/oracle.hpp"

#include <algorithm>
#include <vector>

namespace coarse {
namespace {

void extend(const MetricMatrix& w, Index source, Index at, double cost, std::vector<char>& visited,
            MetricMatrix& best) {
  best(source, at) = std::min(best(source, at), cost);
  for (Index next = 0; next < w.rows(); ++next) {
    if (visited[static_cast<std::size_t>(next)]) continue;
    visited[static_cast<std::size_t>(next)] = 1;
    extend(w, source, next, cost + w(at, next), visited, best);
    visited[static_cast<std::size_t>(next)] = 0;
  }
}

}  // namespace

MetricMatrix exhaustive_chain_minimum(const MetricMatrix& weights) {
  const Index n = weights.rows();
  MetricMatrix best = MetricMatrix::Constant(n, n, infinity<double>());
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  for (Index s = 0; s < n; ++s) {
    visited[static_cast<std::size_t>(s)] = 1;
    extend(weights, s, s, 0.0, visited, best);
    visited[static_cast<std::size_t>(s)] = 0;
  }
  return best;
}

MetricMatrix random_symmetric_net(Index n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  MetricMatrix m = MetricMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) m(i, j) = m(j, i) = dist(rng);
  }
  return m;
}

}  // namespace coarse
