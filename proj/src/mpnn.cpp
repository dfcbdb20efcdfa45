#include "gnnpower/mpnn.hpp"

#include <json.hpp>

#include "gnnpower/errors.hpp"

namespace gnnpower {

void MpnnSpec::validate(std::size_t s0) const {
  // Unknown (nullopt) once a layer's output width depends on the data.
  std::optional<std::size_t> width(s0);
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    const Layer& layer = *rounds[t];
    if (f_mode == FMode::Zero && layer.uses_degree()) {
      throw ValidationError("round " + std::to_string(t + 1) + ": family " + layer.family() +
                            " uses degrees but f_mode is zero");
    }
    auto expected = layer.input_width();
    if (width && expected && *width != *expected) {
      throw ValidationError("round " + std::to_string(t + 1) + ": input width " +
                            std::to_string(*width) + " but " + layer.family() + " expects " +
                            std::to_string(*expected));
    }
    if (width) width = layer.output_width(width.value());
  }
}

RunTrace run_mpnn(const LabelledGraph& g, const MpnnSpec& spec) {
  spec.validate(g.label_width());
  const std::size_t n = g.size();
  RunTrace trace;
  trace.labellings.push_back(Labelling{g.labels()});
  trace.partitions.push_back(partition_of(trace.labellings.back()));

  std::vector<std::size_t> f(n, 0);
  if (spec.f_mode == FMode::Degree) f = g.degrees();

  for (std::size_t t = 0; t < spec.rounds.size(); ++t) {
    const Layer& layer = *spec.rounds[t];
    const std::vector<Vector>& prev = trace.labellings.back().rows;
    if (auto expected = layer.input_width(); expected && *expected != prev.front().size()) {
      throw ValidationError("round " + std::to_string(t + 1) + ": label width " +
                            std::to_string(prev.front().size()) + " but " + layer.family() +
                            " expects " + std::to_string(*expected));
    }

    std::vector<Vector> messages(n);
    for (std::size_t v = 0; v < n; ++v) {
      Vector sum;
      for (auto u : g.neighbours(v)) {
        Vector msg = layer.message(prev[v], prev[u], f[v], f[u]);
        if (sum.empty()) {
          sum = std::move(msg);
        } else if (msg.size() != sum.size()) {
          throw ValidationError("round " + std::to_string(t + 1) +
                                ": message widths differ across neighbours");
        } else {
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += msg[i];
        }
      }
      messages[v] = std::move(sum);
    }

    RoundContext ctx;
    ctx.n = n;
    ctx.previous = &prev;
    Labelling next;
    next.rows.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      next.rows.push_back(layer.update(prev[v], messages[v], ctx));
      if (next.rows.back().size() != next.rows.front().size()) {
        throw ValidationError("round " + std::to_string(t + 1) + ": update widths differ");
      }
    }
    trace.partitions.push_back(partition_of(next));
    trace.labellings.push_back(std::move(next));
  }
  return trace;
}

std::vector<Partition> partitions_of(const RunTrace& trace) { return trace.partitions; }

std::string run_trace_json(const RunTrace& trace) {
  nlohmann::ordered_json out;
  out["rounds"] = nlohmann::json::array();
  for (std::size_t t = 0; t < trace.labellings.size(); ++t) {
    nlohmann::ordered_json round;
    round["round"] = t;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : trace.labellings[t].rows) {
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& x : row) entries.push_back(x.str());
      rows.push_back(entries);
    }
    round["labels"] = rows;
    round["classes"] = trace.partitions[t].class_of;
    round["class_count"] = trace.partitions[t].num_classes;
    out["rounds"].push_back(round);
  }
  return out.dump();
}

}  // namespace gnnpower
