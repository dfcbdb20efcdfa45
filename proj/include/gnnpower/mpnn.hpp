#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gnnpower/graph.hpp"
#include "gnnpower/labelling.hpp"
#include "gnnpower/layers.hpp"

namespace gnnpower {

enum class FMode { Zero, Degree };

struct MpnnSpec {
  FMode f_mode = FMode::Zero;
  std::vector<LayerPtr> rounds;

  std::size_t size() const { return rounds.size(); }
  /// Checks the width chain from s0 and that f_mode = zero has no
  /// degree-using layer. Throws ValidationError.
  void validate(std::size_t s0) const;
};

struct RunTrace {
  /// labellings[0] is the initial labelling.
  std::vector<Labelling> labellings;
  std::vector<Partition> partitions;

  std::size_t rounds() const { return labellings.size() - 1; }
};

/// Executes every round of `spec`. Round t reads only round t-1 labels.
RunTrace run_mpnn(const LabelledGraph& g, const MpnnSpec& spec);

/// Partition-only trace built from a run, for comparisons.
std::vector<Partition> partitions_of(const RunTrace& trace);

std::string run_trace_json(const RunTrace& trace);

}  // namespace gnnpower
