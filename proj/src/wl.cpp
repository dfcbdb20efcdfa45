#include "gnnpower/wl.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "gnnpower/errors.hpp"

namespace gnnpower {

Partition wl_step(const LabelledGraph& g, const Partition& current) {
  if (current.size() != g.size()) {
    throw ValidationError("partition covers " + std::to_string(current.size()) +
                          " vertices, graph has " + std::to_string(g.size()));
  }
  using Signature = std::pair<std::size_t, std::vector<std::size_t>>;
  std::map<Signature, std::size_t> dictionary;
  Partition next;
  next.class_of.reserve(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::vector<std::size_t> around;
    around.reserve(g.degree(v));
    for (auto u : g.neighbours(v)) around.push_back(current.class_of[u]);
    std::sort(around.begin(), around.end());
    auto [it, inserted] =
        dictionary.try_emplace(Signature{current.class_of[v], std::move(around)}, dictionary.size());
    next.class_of.push_back(it->second);
  }
  next.num_classes = dictionary.size();
  return next;
}

namespace {

WlTrace run(const LabelledGraph& g, std::optional<std::size_t> max_rounds, bool stop_when_stable) {
  WlTrace trace;
  trace.rounds.push_back(partition_of(Labelling{g.labels()}));
  for (std::size_t t = 1; !max_rounds || t <= *max_rounds; ++t) {
    Partition next = wl_step(g, trace.rounds.back());
    bool stable = next.num_classes == trace.rounds.back().num_classes;
    trace.rounds.push_back(std::move(next));
    if (stable && !trace.stabilized_at) {
      trace.stabilized_at = t;
      if (stop_when_stable) break;
    }
  }
  return trace;
}

}  // namespace

WlTrace wl_run(const LabelledGraph& g, std::optional<std::size_t> max_rounds) {
  return run(g, max_rounds, true);
}

WlTrace wl_rounds(const LabelledGraph& g, std::size_t rounds) { return run(g, rounds, false); }

std::string wl_trace_json(const WlTrace& trace) {
  nlohmann::ordered_json out;
  out["rounds"] = nlohmann::json::array();
  for (const auto& p : trace.rounds) out["rounds"].push_back(p.class_of);
  out["stabilized_at"] = trace.stabilized_at ? nlohmann::json(*trace.stabilized_at) : nlohmann::json();
  return out.dump();
}

}  // namespace gnnpower
