#pragma once

// Exhaustive reference for the chain infimum on small nets, and the random
// nets used to exercise it.

#include <random>

#include "coarse/metric.hpp"

namespace coarse {

/// Minimum over every simple chain between each pair, by depth-first
/// enumeration. Exponential: intended for at most ~10 points.
MetricMatrix exhaustive_chain_minimum(const MetricMatrix& weights);

/// Symmetric matrix with zero diagonal and off-diagonal entries uniform in
/// [lo, hi). Not a metric in general.
MetricMatrix random_symmetric_net(Index n, std::mt19937_64& rng, double lo = 0.1, double hi = 10.0);

}  // namespace coarse
