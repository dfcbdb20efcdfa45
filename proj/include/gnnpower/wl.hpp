#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gnnpower/graph.hpp"
#include "gnnpower/labelling.hpp"

namespace gnnpower {

struct WlTrace {
  /// rounds[0] is the partition of the initial labels.
  std::vector<Partition> rounds;
  std::optional<std::size_t> stabilized_at;
};

/// One refinement step: v and w share a class iff they did before and their
/// neighbour-class multisets agree. Ids are dense in first-occurrence order.
Partition wl_step(const LabelledGraph& g, const Partition& current);

/// Refines until two consecutive rounds have the same class count, or until
/// max_rounds steps have been taken.
WlTrace wl_run(const LabelledGraph& g, std::optional<std::size_t> max_rounds = std::nullopt);

/// Exactly `rounds` steps, ignoring stabilization; stabilized_at is still recorded.
WlTrace wl_rounds(const LabelledGraph& g, std::size_t rounds);

std::string wl_trace_json(const WlTrace& trace);

}  // namespace gnnpower
