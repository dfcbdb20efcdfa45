#include "gnnpower/cases.hpp"

#include <filesystem>
#include <sstream>

#include "gnnpower/compare.hpp"
#include "gnnpower/errors.hpp"
#include "gnnpower/mpnn.hpp"
#include "gnnpower/sampling.hpp"
#include "gnnpower/spec_io.hpp"
#include "gnnpower/wl.hpp"

namespace gnnpower {

namespace {

Vector one_hot(std::size_t width, std::size_t index) {
  Vector row(width);
  row[index] = ExactScalar(1L);
  return row;
}

// Labels as 1-based symbol indices, edges 1-based.
LabelledGraph make(std::size_t width, const std::vector<std::size_t>& symbols,
                   const std::vector<LabelledGraph::Edge>& edges) {
  std::vector<Vector> labels;
  for (auto s : symbols) labels.push_back(one_hot(width, s - 1));
  std::vector<LabelledGraph::Edge> zero_based;
  for (const auto& [a, b] : edges) zero_based.emplace_back(a - 1, b - 1);
  return LabelledGraph(symbols.size(), std::move(zero_based), std::move(labels));
}

}  // namespace

bool is_builtin_graph(const std::string& id) {
  return id == "fig1" || id == "g1" || id == "g2" || id == "g3";
}

LabelledGraph builtin_graph(const std::string& id) {
  if (id == "fig1") return make(3, {1, 1, 2, 3, 3, 2}, {{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  if (id == "g1") return make(3, {1, 2, 2, 3}, {{1, 2}, {1, 3}, {4, 2}, {4, 3}});
  if (id == "g2") return make(2, {1, 2}, {{1, 2}});
  if (id == "g3") {
    return make(3, {1, 2, 2, 3, 3, 2, 1, 1, 3, 3},
                {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {6, 7}, {6, 8}, {6, 9}, {6, 10}});
  }
  throw ValidationError("unknown built-in graph '" + id + "'");
}

LabelledGraph resolve_graph(const std::string& id_or_path) {
  if (is_builtin_graph(id_or_path)) return builtin_graph(id_or_path);
  if (!std::filesystem::exists(id_or_path)) {
    throw ParseError("'" + id_or_path + "' is neither a built-in graph nor a file");
  }
  return load_graph_file(id_or_path);
}

std::vector<CaseInfo> case_catalog() {
  return {
      {"fig1-gcn", "fig1", {"gcn"}, {3, 4}, false, 1},
      {"g1-dgnn12", "g1", {"dgnn1", "dgnn2"}, {0, 3}, true, 1},
      {"g2-dgnn34", "g2", {"dgnn3", "dgnn4"}, {0, 1}, true, 1},
      {"g3-dgnn5", "g3", {"dgnn5"}, {0, 5}, true, 1},
      {"fig1-dgnn6", "fig1", {"dgnn6"}, {3, 4}, false, 1},
  };
}

const CaseInfo& case_info(const std::string& id) {
  static const std::vector<CaseInfo> catalog = case_catalog();
  for (const auto& c : catalog) {
    if (c.id == id) return c;
  }
  throw ValidationError("unknown case '" + id + "'");
}

bool CaseReport::passed() const {
  return structural_ok && trials_ok && wl_ok && (!plus_one_checked || plus_one_holds);
}

namespace {

constexpr long kTrialNum = 5;
constexpr long kTrialDen = 3;

LayerParams case_params(const std::string& family, const Matrix& w, const Vector& bias,
                        Activation sigma) {
  LayerParams params;
  params.w = w;
  params.bias = bias;
  params.sigma = sigma;
  if (family == "dgnn6") {
    params.r = Rational(1, 2);
    params.p = ExactScalar(Rational(1, 2));
  }
  return params;
}

// Pre-weight matrix from the layer's parameters by plain matrix algebra.
std::vector<Vector> pre_weight(const LabelledGraph& g, const DgnnParams& d) {
  const std::size_t n = g.size();
  Matrix gd(n, n), hd(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    gd(v, v) = d.g(g.degree(v));
    hd(v, v) = d.h(g.degree(v));
  }
  Matrix mix = gd * (g.adjacency() + scale(d.p, Matrix::identity(n))) * hd;
  if (d.w1.rows() != 0) mix = mix + Matrix::identity(n);
  return (mix * g.label_matrix()).to_rows();
}

}  // namespace

CaseReport verify_counterexample(const CaseSpec& spec) {
  CaseReport report;
  report.info = case_info(spec.id);
  report.trials = spec.trials;
  report.seed = spec.seed;
  const LabelledGraph g = builtin_graph(report.info.graph);
  const std::size_t s0 = g.label_width();
  const auto [a, b] = report.info.pair;

  report.structural_ok = true;
  report.trials_ok = true;
  Rng rng(spec.seed);
  for (const auto& family : report.info.families) {
    FamilyCheck check;
    check.family = family;
    LayerPtr probe = builtin_layer(
        family, case_params(family, Matrix::identity(s0), Vector(s0), Activation::None));
    const auto* dgnn = dynamic_cast<const DgnnLayer*>(probe.get());
    check.pre_weight = pre_weight(g, dgnn->params());
    check.pair_rows_equal = check.pre_weight[a] == check.pre_weight[b];

    // The identity-weight run must reproduce the algebraic pre-weight matrix.
    MpnnSpec identity_run{FMode::Degree, {probe}};
    const bool consistent = run_mpnn(g, identity_run).labellings[1].rows == check.pre_weight;
    report.structural_ok = report.structural_ok && consistent &&
                           check.pair_rows_equal == report.info.merge_claim;

    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      const std::size_t out = s0;
      LayerPtr layer = builtin_layer(
          family, case_params(family, random_matrix(rng, s0, out, kTrialNum, kTrialDen),
                              random_vector(rng, out, kTrialNum, kTrialDen), Activation::Relu));
      const Labelling l1 = run_mpnn(g, MpnnSpec{FMode::Degree, {layer}}).labellings[1];
      if (l1.rows[a] == l1.rows[b]) {
        ++check.trials_equal;
      } else {
        ++check.trials_separated;
      }
    }
    // Merge claims must hold in every trial; separation cases are corroborative.
    if (report.info.merge_claim) report.trials_ok = report.trials_ok && check.trials_separated == 0;
    report.families.push_back(std::move(check));
  }

  const WlTrace wl = wl_rounds(g, report.info.wl_round);
  const Partition& p = wl.rounds[report.info.wl_round];
  report.wl_separates = p.class_of[a] != p.class_of[b];
  report.wl_ok = report.wl_separates == report.info.merge_claim;

  if (!report.info.merge_claim) {
    constexpr std::size_t kRounds = 3;
    report.plus_one_checked = true;
    report.plus_one_holds = true;
    const std::vector<Partition> wl_parts = wl_rounds(g, kRounds + 1).rounds;
    for (const auto& family : report.info.families) {
      MpnnSpec spec_t = named_spec(family, s0, kRounds);
      const RunTrace run = run_mpnn(g, spec_t);
      report.plus_one_holds =
          report.plus_one_holds && weaker(run.partitions, wl_parts, ShiftSpec::plus_one()).holds;
    }
  }
  return report;
}

namespace {

std::string vertex_name(const CaseInfo& info, std::size_t v) {
  if (info.graph == "g3") return v < 5 ? "v" + std::to_string(v + 1) : "w" + std::to_string(v - 4);
  return "v" + std::to_string(v + 1);
}

const char* verdict(bool ok) { return ok ? "ok" : "FAILED"; }

}  // namespace

std::string case_report_text(const CaseReport& r) {
  std::ostringstream out;
  const std::string va = vertex_name(r.info, r.info.pair.first);
  const std::string vb = vertex_name(r.info, r.info.pair.second);
  out << "case " << r.info.id << " on " << r.info.graph << ", pair (" << va << ", " << vb
      << "), " << r.trials << " trials, seed " << r.seed << "\n";
  for (const auto& f : r.families) {
    out << "  " << f.family << " pre-weight rows: " << va << " = "
        << to_string(f.pre_weight[r.info.pair.first]) << ", " << vb << " = "
        << to_string(f.pre_weight[r.info.pair.second]) << " ("
        << (f.pair_rows_equal ? "equal" : "distinct") << ")\n";
    out << "  " << f.family << " trials: " << f.trials_equal << " equal, " << f.trials_separated
        << " separated\n";
  }
  out << "  structural: " << verdict(r.structural_ok) << "\n";
  out << "  trials: " << verdict(r.trials_ok) << "\n";
  out << "  wl round " << r.info.wl_round << ": pair " << (r.wl_separates ? "separated" : "merged")
      << " " << verdict(r.wl_ok) << "\n";
  if (r.plus_one_checked) {
    out << "  weaker than wl one step ahead: " << verdict(r.plus_one_holds) << "\n";
  }
  out << (r.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

nlohmann::json case_report_json(const CaseReport& r) {
  nlohmann::json out;
  out["case"] = r.info.id;
  out["graph"] = r.info.graph;
  out["pair"] = {r.info.pair.first + 1, r.info.pair.second + 1};
  out["merge_claim"] = r.info.merge_claim;
  out["trials"] = r.trials;
  out["seed"] = r.seed;
  nlohmann::json families = nlohmann::json::array();
  for (const auto& f : r.families) {
    nlohmann::json item;
    item["family"] = f.family;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : f.pre_weight) rows.push_back(vector_to_json(row));
    item["pre_weight"] = rows;
    item["pair_rows_equal"] = f.pair_rows_equal;
    item["trials_equal"] = f.trials_equal;
    item["trials_separated"] = f.trials_separated;
    families.push_back(item);
  }
  out["families"] = families;
  out["structural_ok"] = r.structural_ok;
  out["trials_ok"] = r.trials_ok;
  out["wl_round"] = r.info.wl_round;
  out["wl_separates"] = r.wl_separates;
  out["wl_ok"] = r.wl_ok;
  out["plus_one"] = r.plus_one_checked ? nlohmann::json(r.plus_one_holds) : nlohmann::json();
  out["passed"] = r.passed();
  return out;
}

}  // namespace gnnpower
