#include "gnnpower/transforms.hpp"

#include "gnnpower/errors.hpp"

namespace gnnpower {

MpnnSpec degree_probe_spec() {
  return MpnnSpec{FMode::Zero, {std::make_shared<DegreeProbeLayer>()}};
}

MpnnSpec lift_plus_one(const MpnnSpec& spec) {
  MpnnSpec out = degree_probe_spec();
  for (const auto& layer : spec.rounds) out.rounds.push_back(std::make_shared<LiftedLayer>(layer));
  return out;
}

MpnnSpec anonymize_h_const(const MpnnSpec& spec) {
  MpnnSpec out{FMode::Zero, {}};
  for (std::size_t t = 0; t < spec.rounds.size(); ++t) {
    const auto* dgnn = dynamic_cast<const DgnnLayer*>(spec.rounds[t].get());
    if (!dgnn) {
      throw ValidationError("round " + std::to_string(t + 1) + ": family " +
                            spec.rounds[t]->family() + " is not a dgnn layer");
    }
    if (!dgnn->params().h.is_constant_one()) {
      throw ValidationError("round " + std::to_string(t + 1) + ": h is not constantly 1");
    }
    out.rounds.push_back(std::make_shared<AnonymizedDgnnLayer>(dgnn->params()));
  }
  return out;
}

MpnnSpec wrap_comb_aggr(const MessageMap& h, const AggregateMap& g, const Combiner& comb,
                        std::size_t rounds) {
  auto layer = std::make_shared<CombAggrLayer>(h, g, comb);
  return MpnnSpec{FMode::Zero, std::vector<LayerPtr>(rounds, layer)};
}

MpnnSpec wl_as_mpnn(std::size_t n, std::size_t rounds) {
  MessageMap h;
  h.kind = MessageMap::Kind::InjectLabel;
  h.n = n;
  AggregateMap g;
  g.kind = AggregateMap::Kind::PhiInverse;
  Combiner comb;
  comb.kind = Combiner::Kind::HashPair;
  return wrap_comb_aggr(h, g, comb, rounds);
}

LabelledGraph encode_labels_for_injection(const LabelledGraph& g) {
  Partition p = partition_of(Labelling{g.labels()});
  std::vector<Vector> labels;
  labels.reserve(g.size());
  for (auto c : p.class_of) labels.push_back({zigzag(c)});
  return g.relabelled(std::move(labels));
}

}  // namespace gnnpower
