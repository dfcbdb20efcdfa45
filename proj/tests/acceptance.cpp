// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails. Tolerances are exact equality unless a time limit is
// printed next to the criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gnnpower/cases.hpp"
#include "gnnpower/compare.hpp"
#include "gnnpower/errors.hpp"
#include "gnnpower/injection.hpp"
#include "gnnpower/sampling.hpp"
#include "gnnpower/spec_io.hpp"
#include "gnnpower/synthesis.hpp"
#include "gnnpower/transforms.hpp"
#include "gnnpower/wl.hpp"

using namespace gnnpower;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  std::optional<double> limit_seconds;
  std::function<Outcome()> run;
};

ExactScalar Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return ExactScalar(r);
}

ExactScalar root(long radicand) { return ExactScalar::sqrt_of(Rational(radicand)); }

std::size_t stabilization_round(const LabelledGraph& g) {
  const std::size_t t = wl_run(g).stabilized_at.value_or(g.size());
  return t == 0 ? 1 : t;
}

// Connected graphs with 2..10 vertices and one-hot labels over up to 3 symbols.
std::vector<LabelledGraph> synthesis_graphs() {
  std::vector<LabelledGraph> out;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    out.push_back(sample_graph(2 + seed % 9, Rational(2, 5), 1000 + seed, {true, 3}));
  }
  return out;
}

// Graphs with 3..10 vertices so that every label has width 3.
std::vector<LabelledGraph> property_graphs() {
  std::vector<LabelledGraph> out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    out.push_back(sample_graph(3 + seed % 8, Rational(1, 3), 2000 + seed, {false, 3}));
  }
  return out;
}

// ---- 1 ---------------------------------------------------------------------

Outcome gcn_matrix() {
  // Reference entries: 1/2, 1/(2 sqrt 2), 1/sqrt 2, 1/4, 1/(2 sqrt 3), 2/3, 1/sqrt 6.
  const ExactScalar half = Q(1, 2);
  const ExactScalar a = (Q(2) * root(2)).inverse();
  const ExactScalar b = root(2).inverse();
  const ExactScalar c = (Q(2) * root(3)).inverse();
  const ExactScalar d = root(6).inverse();
  const std::vector<std::vector<ExactScalar>> reference = {
      {half, a, Q(0)}, {half, a, Q(0)}, {b, Q(1, 4), c},
      {Q(0), c, Q(2, 3)}, {Q(0), d, Q(2, 3)}, {Q(0), half, d},
  };
  RunTrace run = run_mpnn(builtin_graph("fig1"), named_spec("gcn", 3, 1));
  std::size_t mismatches = 0;
  std::ostringstream first;
  for (std::size_t v = 0; v < 6; ++v) {
    for (std::size_t j = 0; j < 3; ++j) {
      const std::string got = run.labellings[1].rows[v][j].str();
      const std::string want = reference[v][j].str();
      if (got != want && mismatches++ == 0) {
        first << " first mismatch v" << v + 1 << "[" << j + 1 << "]: " << got << " vs " << want;
      }
    }
  }
  return {mismatches == 0, "row v5 = (" + run.labellings[1].rows[4][0].str() + ", " +
                               run.labellings[1].rows[4][1].str() + ", " +
                               run.labellings[1].rows[4][2].str() + "), " +
                               std::to_string(mismatches) + " mismatches" + first.str()};
}

// ---- 2 ---------------------------------------------------------------------

Outcome gcn_vs_wl() {
  const LabelledGraph g = builtin_graph("fig1");
  const auto gcn = run_mpnn(g, named_spec("gcn", 3, 3)).partitions;
  CompareVerdict same = weaker(gcn, wl_rounds(g, 3).rounds);
  CompareVerdict ahead = weaker(gcn, wl_rounds(g, 4).rounds, ShiftSpec::plus_one());
  const bool witness_ok = !same.holds && same.first_violation && same.first_violation->round == 1 &&
                          same.first_violation->v == 3 && same.first_violation->w == 4;
  std::ostringstream out;
  out << "identity: " << (same.holds ? "holds" : "fails");
  if (same.first_violation) {
    out << " at round " << same.first_violation->round << " (v" << same.first_violation->v + 1
        << ", v" << same.first_violation->w + 1 << ")";
  }
  out << "; plus_one over 3 rounds: " << (ahead.holds ? "holds" : "fails");
  return {witness_ok && ahead.holds, out.str()};
}

// ---- 3 ---------------------------------------------------------------------

using Rows = std::vector<Vector>;

// Closed-form g and h of each family, written independently of the library.
std::pair<ExactScalar, ExactScalar> gh(const std::string& family, long d) {
  if (family == "dgnn1") return {Q(1, d), Q(1)};
  if (family == "dgnn2") return {root(d).inverse(), root(d).inverse()};
  if (family == "dgnn3") return {Q(1, d + 1), Q(1)};
  if (family == "dgnn4") return {root(d + 1).inverse(), root(d + 1).inverse()};
  throw std::logic_error("no closed form for " + family);
}

Rows g1_reference(const std::string& family) {
  auto [g, h] = gh(family, 2);
  const ExactScalar c = g * h;
  return {{Q(0), Q(2) * c, Q(0)}, {c, Q(0), c}, {c, Q(0), c}, {Q(0), Q(2) * c, Q(0)}};
}

Rows g2_reference(const std::string& family) {
  auto [g, h] = gh(family, 1);
  const ExactScalar c = g * h;
  return {{c, c}, {c, c}};
}

Rows g3_reference() {
  const ExactScalar h = Q(1, 2);
  return {{Q(1), Q(1), Q(1)}, {h, Q(1), Q(0)}, {h, Q(1), Q(0)}, {h, Q(0), Q(1)},
          {h, Q(0), Q(1)},    {Q(1), Q(1), Q(1)}, {Q(1), h, Q(0)}, {Q(1), h, Q(0)},
          {Q(0), h, Q(1)},    {Q(0), h, Q(1)}};
}

Outcome counterexamples() {
  struct Expect {
    std::string id;
    std::map<std::string, Rows> reference;
  };
  const std::vector<Expect> expected = {
      {"g1-dgnn12", {{"dgnn1", g1_reference("dgnn1")}, {"dgnn2", g1_reference("dgnn2")}}},
      {"g2-dgnn34", {{"dgnn3", g2_reference("dgnn3")}, {"dgnn4", g2_reference("dgnn4")}}},
      {"g3-dgnn5", {{"dgnn5", g3_reference()}}},
  };
  bool ok = true;
  std::ostringstream out;
  for (const auto& e : expected) {
    CaseReport r = verify_counterexample({e.id, 100, 1});
    bool reference_ok = true;
    std::size_t separations = 0;
    for (const auto& f : r.families) {
      auto it = e.reference.find(f.family);
      reference_ok = reference_ok && it != e.reference.end() && f.pre_weight == it->second;
      separations += f.trials_separated;
    }
    const bool case_ok = r.passed() && reference_ok && separations == 0 && r.wl_separates;
    ok = ok && case_ok;
    out << e.id << " " << (case_ok ? "ok" : "FAILED") << " (reference " << (reference_ok ? "=" : "!=")
        << ", " << separations << " separations/100, wl " << (r.wl_separates ? "separates" : "merges")
        << ")  ";
  }
  return {ok, out.str()};
}

// ---- 4 ---------------------------------------------------------------------

Outcome gnn_minus_synthesis() {
  std::size_t failures = 0, runs = 0, max_rounds = 0;
  std::string first;
  for (const auto& g : synthesis_graphs()) {
    const std::size_t t = stabilization_round(g);
    max_rounds = std::max(max_rounds, t);
    for (Activation sigma : {Activation::Relu, Activation::Sign}) {
      ++runs;
      try {
        SynthesisCertificate cert = synthesize_gnn_minus(g, t, {sigma, std::nullopt, false});
        if (!cert.all_equivalent() || !cert.all_independent()) {
          ++failures;
          if (first.empty()) first = " first failure n=" + std::to_string(g.size());
        }
      } catch (const std::exception& ex) {
        if (failures++ == 0) first = std::string(" first failure: ") + ex.what();
      }
    }
  }
  return {failures == 0, std::to_string(runs) + " syntheses (relu and sign), max T = " +
                             std::to_string(max_rounds) + ", " + std::to_string(failures) +
                             " failures" + first};
}

// ---- 5 ---------------------------------------------------------------------

struct Dgnn6Summary {
  std::size_t runs = 0;
  std::size_t hard_failures = 0;  // refines, independence or the p bound fails
  std::size_t non_equivalent_runs = 0;
  std::map<std::size_t, std::size_t> non_equivalent_rounds;  // round -> count
  std::string first_error;
};

const Dgnn6Summary& dgnn6_summary() {
  static std::optional<Dgnn6Summary> cached;
  if (cached) return *cached;
  Dgnn6Summary s;
  const DegreeFunction norm = DegreeFunction::inv_sqrt_degree_plus_one();
  for (const auto& g : synthesis_graphs()) {
    const std::size_t t = stabilization_round(g);
    for (Activation sigma : {Activation::Relu, Activation::Sign}) {
      ++s.runs;
      try {
        SynthesisCertificate cert = synthesize_dgnn6(g, t, sigma, norm, norm);
        const ExactScalar mp = compute_mp(g, norm);
        const bool bound = cert.m_p && *cert.m_p == mp && compare(mp, cert.p) < 0 &&
                           compare(cert.p, 1L) < 0;
        if (!bound || !cert.all_refine() || !cert.all_independent()) ++s.hard_failures;
        bool equivalent = true;
        for (std::size_t r = 0; r < cert.per_round.size(); ++r) {
          if (!cert.per_round[r].equivalent_to_wl) {
            equivalent = false;
            ++s.non_equivalent_rounds[r + 1];
          }
        }
        if (!equivalent) ++s.non_equivalent_runs;
      } catch (const std::exception& ex) {
        if (s.hard_failures++ == 0) s.first_error = ex.what();
      }
    }
  }
  cached = s;
  return *cached;
}

Outcome dgnn6_refines() {
  const Dgnn6Summary& s = dgnn6_summary();
  return {s.hard_failures == 0,
          std::to_string(s.runs) + " syntheses, g = h = (1+d)^(-1/2); refines WL, row-independent and " +
              "m_p < p < 1 in all but " + std::to_string(s.hard_failures) +
              (s.first_error.empty() ? "" : " (" + s.first_error + ")")};
}

Outcome dgnn6_equivalent() {
  const Dgnn6Summary& s = dgnn6_summary();
  std::ostringstream out;
  out << s.non_equivalent_runs << " of " << s.runs
      << " syntheses are not equivalent to WL; non-equivalent rounds:";
  if (s.non_equivalent_rounds.empty()) out << " none";
  for (const auto& [round, count] : s.non_equivalent_rounds) out << " t=" << round << " x" << count;
  out << ". Round 1 degree scaling separates same-label vertices whose neighbours differ only"
         " in degree; later rounds inherit the finer split. Labels refine WL but are strictly finer.";
  return {s.non_equivalent_runs == 0 && s.hard_failures == 0, out.str()};
}

// ---- 6 ---------------------------------------------------------------------

Outcome anonymous_upper_bound() {
  const auto graphs = property_graphs();
  const char* families[] = {"gnn", "gnn-minus", "comb-aggr"};
  std::size_t violations = 0, checks = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(3000 + k);
    const std::size_t rounds = 1 + rng.below(4);
    MpnnSpec spec = random_anonymous_spec(rng, families[k % 3], 3, rounds);
    for (const auto& g : graphs) {
      ++checks;
      const auto m = run_mpnn(g, spec).partitions;
      if (!weaker(m, wl_rounds(g, rounds).rounds).holds) ++violations;
    }
  }
  return {violations == 0, "50 specs x 20 graphs = " + std::to_string(checks) + " runs, " +
                               std::to_string(violations) + " violations"};
}

// ---- 7 ---------------------------------------------------------------------

Outcome degree_aware_upper_bound() {
  const auto graphs = property_graphs();
  const char* families[] = {"gcn", "dgnn1", "dgnn2", "dgnn3", "dgnn4", "dgnn5", "dgnn6"};
  std::size_t bound_violations = 0, lift_violations = 0, checks = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(4000 + k);
    const std::size_t rounds = 1 + rng.below(4);
    MpnnSpec spec = random_degree_aware_spec(rng, families[k % 7], 3, rounds);
    MpnnSpec lifted = lift_plus_one(spec);
    for (const auto& g : graphs) {
      ++checks;
      const auto m = run_mpnn(g, spec).partitions;
      if (!weaker(m, wl_rounds(g, rounds + 1).rounds, ShiftSpec::plus_one()).holds) ++bound_violations;
      if (!weaker(m, run_mpnn(g, lifted).partitions, ShiftSpec::plus_one()).holds) ++lift_violations;
    }
  }
  return {bound_violations == 0 && lift_violations == 0,
          "50 specs x 20 graphs = " + std::to_string(checks) + " runs, " +
              std::to_string(bound_violations) + " one-step-ahead violations, " +
              std::to_string(lift_violations) + " lift violations"};
}

// ---- 8 ---------------------------------------------------------------------

Outcome injection_encoding() {
  const std::vector<std::uint64_t> dictionary = {tau(Vector{Q(0)}), tau(Vector{Q(1)}),
                                                 tau(Vector{Q(-1)})};
  std::size_t multisets = 0, round_trip_failures = 0;
  for (std::size_t a = 0; a <= 5; ++a) {
    for (std::size_t b = 0; a + b <= 5; ++b) {
      for (std::size_t c = 0; a + b + c <= 5; ++c) {
        std::vector<std::uint64_t> bag;
        bag.insert(bag.end(), a, dictionary[0]);
        bag.insert(bag.end(), b, dictionary[1]);
        bag.insert(bag.end(), c, dictionary[2]);
        if (phi_inverse(phi_sum(bag, 5), 5, dictionary) != std::vector<std::size_t>{a, b, c}) {
          ++round_trip_failures;
        }
        ++multisets;
      }
    }
  }
  std::size_t wl_mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 2 + seed % 4;
    LabelledGraph g = sample_graph(n, Rational(1, 2), 5000 + seed, {false, 2});
    const std::size_t rounds = 3;
    RunTrace run = run_mpnn(encode_labels_for_injection(g), wl_as_mpnn(n, rounds));
    WlTrace wl = wl_rounds(g, rounds);
    for (std::size_t t = 0; t <= rounds; ++t) wl_mismatches += run.partitions[t] == wl.rounds[t] ? 0 : 1;
  }
  return {multisets == 56 && round_trip_failures == 0 && wl_mismatches == 0,
          std::to_string(multisets) + " multisets, " + std::to_string(round_trip_failures) +
              " round-trip failures; 10 micro graphs, " + std::to_string(wl_mismatches) +
              " round mismatches"};
}

// ---- 9 ---------------------------------------------------------------------

Outcome wl_termination() {
  std::size_t late = 0, worst = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::size_t n = 2 + seed % 11;
    LabelledGraph g = sample_graph(n, Rational(1, 4), 6000 + seed, {false, 1 + seed % 3});
    WlTrace trace = wl_run(g);
    if (!trace.stabilized_at || *trace.stabilized_at > n) {
      ++late;
    } else {
      worst = std::max(worst, *trace.stabilized_at);
    }
  }
  return {late == 0, "100 graphs, n <= 12, latest stabilization at round " + std::to_string(worst) +
                         ", " + std::to_string(late) + " beyond n"};
}

// ---- 10 --------------------------------------------------------------------

Outcome anonymization() {
  std::size_t violations = 0, checks = 0;
  const auto graphs = property_graphs();
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    for (const char* family : {"dgnn1", "dgnn3"}) {
      Rng rng(7000 + k);
      MpnnSpec spec = random_degree_aware_spec(rng, family, 3, 3);
      ++checks;
      if (run_mpnn(graphs[k], spec).partitions != run_mpnn(graphs[k], anonymize_h_const(spec)).partitions) {
        ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(checks) + " spec/graph pairs, " + std::to_string(violations) +
                               " partition mismatches"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "GCN round-1 matrix on the fig1 graph, exact canonical strings", 1.0, gcn_matrix},
      {"2", "GCN vs WL on the fig1 graph: identity fails at (1, v4, v5), plus_one holds", 1.0, gcn_vs_wl},
      {"3", "degree-aware counterexamples g1, g2, g3", 5.0, counterexamples},
      {"4", "GNN-minus synthesis equivalent to WL, 50 connected graphs", 120.0, gnn_minus_synthesis},
      {"5a", "dGNN6 synthesis refines WL with independent rows, m_p < p < 1", 120.0, dgnn6_refines},
      {"5b", "dGNN6 synthesis equivalent to WL at every round", 120.0, dgnn6_equivalent},
      {"6", "WL refines every anonymous MPNN", std::nullopt, anonymous_upper_bound},
      {"7", "degree-aware MPNNs are weaker than WL one step ahead; lift contract", std::nullopt,
       degree_aware_upper_bound},
      {"8", "injection round trip and injection-encoded WL", 10.0, injection_encoding},
      {"9", "WL stabilizes within n rounds", std::nullopt, wl_termination},
      {"10", "constant-h anonymization preserves partitions", std::nullopt, anonymization},
  };
  std::size_t failed = 0;
  const auto suite_start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& ex) {
      outcome = {false, std::string("exception: ") + ex.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = !c.limit_seconds || seconds < *c.limit_seconds;
    const bool pass = outcome.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  %-3s %s [%.3f s", pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(), seconds);
    if (c.limit_seconds) std::printf(", limit %.0f s%s", *c.limit_seconds, in_time ? "" : " EXCEEDED");
    std::printf("]\n      %s\n", outcome.detail.c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::printf("%zu of %zu criteria passed in %.2f s (limit 300 s)\n", criteria.size() - failed,
              criteria.size(), total);
  return failed == 0 && total < 300.0 ? 0 : 1;
}
