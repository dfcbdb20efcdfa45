#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gnnpower/degree_function.hpp"
#include "gnnpower/graph.hpp"
#include "gnnpower/mpnn.hpp"
#include "gnnpower/separation.hpp"

namespace gnnpower {

struct SynthesisRound {
  Matrix u;  // right inverse of the unique (scaled) labels
  Matrix x;  // separation matrix
  Matrix w;  // u * x
  ExactScalar q;
  std::optional<ExactScalar> q_max;
  std::size_t base = 0;
  std::vector<std::size_t> permutation;
  std::size_t classes = 0;
  std::size_t wl_classes = 0;
  bool equivalent_to_wl = false;
  bool refines_wl = false;  // the synthesized labelling refines WL's
  bool row_independent = false;
  /// dGNN6 only: uniq(diag(h) L) was invertible. When false, U inverts
  /// uniq(L) instead; same-label vertices of different degree make the
  /// scaled rows parallel, which happens only while labels do not yet
  /// determine degrees.
  bool kappa_independent = true;
};

struct SynthesisCertificate {
  std::string target;  // "gnn-minus" or "dgnn6"
  std::size_t rounds = 0;
  Activation sigma = Activation::Relu;
  ExactScalar p;
  std::optional<ExactScalar> m_p;
  std::optional<ExactScalar> uniform_q;
  std::optional<DegreeFunction> g, h;
  bool re_encoded = false;
  /// Labels the synthesized network starts from (one-hot when re-encoded).
  std::vector<Vector> initial_labels;
  std::vector<SynthesisRound> per_round;
  MpnnSpec spec;

  bool all_equivalent() const;
  bool all_refine() const;
  bool all_independent() const;
};

struct SynthesisOptions {
  Activation sigma = Activation::Relu;
  /// GNN-minus only; defaults to 1/2 and must lie in (0, 1).
  std::optional<ExactScalar> p;
  /// Fix q = 1 - 1/(n+1)^(n+1) for every round.
  bool uniform_q = false;
};

/// Whether the distinct rows of l are linearly independent.
bool row_independent_mod_equality(const Labelling& l);

/// Labels replaced by one-hot indicators of their classes.
LabelledGraph one_hot_classes(const LabelledGraph& g);

ExactScalar uniform_threshold(std::size_t n);

/// GNN-minus network whose labelling is equivalent to WL at every round
/// 0..T on this graph. Throws VerificationFailure if any round is not.
SynthesisCertificate synthesize_gnn_minus(const LabelledGraph& g, std::size_t rounds,
                                          const SynthesisOptions& options = {});

/// max(P_a u P_b u P_c u {0}) over i, j in 0..n and ratios of distinct g values.
ExactScalar compute_mp(const LabelledGraph& g, const DegreeFunction& gfn);

/// Degree-normalized network diag(g)(A + pI)diag(h) L W - qJ with
/// p = (m_p + 1)/2. Required per round: the labelling refines WL and is
/// row-independent modulo equality; equivalence to WL is recorded.
SynthesisCertificate synthesize_dgnn6(const LabelledGraph& g, std::size_t rounds,
                                      Activation sigma, const DegreeFunction& gfn,
                                      const DegreeFunction& hfn, bool uniform_q = false);

nlohmann::json certificate_json(const SynthesisCertificate& cert);

}  // namespace gnnpower
