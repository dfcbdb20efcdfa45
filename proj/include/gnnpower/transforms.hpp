#pragma once

#include <cstddef>

#include "gnnpower/comb_aggr.hpp"
#include "gnnpower/mpnn.hpp"

namespace gnnpower {

/// One anonymous round appending each vertex's degree to its label.
MpnnSpec degree_probe_spec();

/// Anonymous spec with T+1 rounds: the degree probe, then each original
/// round replayed with degrees read from the last label component. Round
/// t+1 of the result carries round t of the original plus the degree.
MpnnSpec lift_plus_one(const MpnnSpec& spec);

/// Anonymous spec equivalent round by round to a dGNN spec whose h is
/// constantly 1. Throws ValidationError for any other layer.
MpnnSpec anonymize_h_const(const MpnnSpec& spec);

/// T copies of the comb-aggr layer (h, g, comb).
MpnnSpec wrap_comb_aggr(const MessageMap& h, const AggregateMap& g, const Combiner& comb,
                        std::size_t rounds);

/// WL cast as an anonymous MPNN for graphs on n vertices: messages are
/// injection codes, the sum is decoded by phi_inverse and hashed with the
/// vertex's own label.
MpnnSpec wl_as_mpnn(std::size_t n, std::size_t rounds);

/// Replaces each initial label by the 1-dim zigzag of its class id, the
/// label domain used by wl_as_mpnn.
LabelledGraph encode_labels_for_injection(const LabelledGraph& g);

}  // namespace gnnpower
