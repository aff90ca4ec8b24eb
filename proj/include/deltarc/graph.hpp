#pragma once

// DOT rendering of a delta model's structure.

#include "deltarc/model.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <utility>

namespace deltarc {

/// Pairs (a, b) where b directly follows a in an admitted application order
/// of some configuration; a is the core name when b comes first.
[[nodiscard]] std::set<std::pair<std::string, std::string>> successor_edges(const DeltaModel& model,
                                                                            std::size_t order_limit = 64);

/// Digraph with the core (box) and deltas (ellipses) as nodes, solid edges for
/// successor_edges, and each configuration as a dashed box linked by a dashed
/// edge from the last delta of its first order.
[[nodiscard]] std::string to_dot(const DeltaModel& model, std::size_t order_limit = 64);

} // namespace deltarc
