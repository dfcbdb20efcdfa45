#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gnnpower/cases.hpp"
#include "gnnpower/compare.hpp"
#include "gnnpower/errors.hpp"
#include "gnnpower/mpnn.hpp"
#include "gnnpower/spec_io.hpp"
#include "gnnpower/synthesis.hpp"
#include "gnnpower/wl.hpp"

using namespace gnnpower;

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kUsage = 2;

struct Common {
  std::string format = "text";
  std::string emit;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--emit", common.emit, "Also write the JSON result to this file");
}

// Prints text or JSON to stdout and writes JSON to --emit when given.
void output(const Common& common, const std::string& text, const nlohmann::json& json) {
  if (common.format == "json") {
    std::cout << json.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  if (!common.emit.empty()) {
    std::ofstream out(common.emit);
    if (!out) throw ParseError("cannot write '" + common.emit + "'");
    out << json.dump(2) << "\n";
  }
}

std::size_t default_rounds(const LabelledGraph& g) {
  const WlTrace wl = wl_run(g);
  return std::max<std::size_t>(1, wl.stabilized_at.value_or(g.size()));
}

// Named spec or spec file; `rounds` applies to named specs and truncates files.
MpnnSpec resolve_spec(const std::string& name, const LabelledGraph& g,
                      std::optional<std::size_t> rounds) {
  if (is_named_spec(name)) {
    return named_spec(name, g.label_width(), rounds.value_or(default_rounds(g)));
  }
  MpnnSpec spec = load_spec_file(name);
  if (rounds) {
    if (*rounds > spec.size()) {
      throw ValidationError("spec '" + name + "' has only " + std::to_string(spec.size()) +
                            " rounds");
    }
    spec.rounds.resize(*rounds);
  }
  return spec;
}

std::string partition_line(const Partition& p) {
  std::string out;
  for (std::size_t v = 0; v < p.size(); ++v) out += (v ? " " : "") + std::to_string(p.class_of[v]);
  return out;
}

int cmd_wl_run(const std::string& graph, std::optional<std::size_t> rounds, const Common& common) {
  const LabelledGraph g = resolve_graph(graph);
  const WlTrace trace = rounds ? wl_rounds(g, *rounds) : wl_run(g);
  std::string text;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    text += "round " + std::to_string(t) + " (" + std::to_string(trace.rounds[t].num_classes) +
            " classes): " + partition_line(trace.rounds[t]) + "\n";
  }
  text += "stabilized at: " +
          (trace.stabilized_at ? std::to_string(*trace.stabilized_at) : std::string("-")) + "\n";
  output(common, text, nlohmann::json::parse(wl_trace_json(trace)));
  return kOk;
}

int cmd_mpnn_run(const std::string& graph, const std::string& spec_name,
                 std::optional<std::size_t> rounds, const Common& common) {
  const LabelledGraph g = resolve_graph(graph);
  const MpnnSpec spec = resolve_spec(spec_name, g, rounds);
  const RunTrace trace = run_mpnn(g, spec);
  std::string text;
  for (std::size_t t = 0; t < trace.labellings.size(); ++t) {
    text += "round " + std::to_string(t) + " (" + std::to_string(trace.partitions[t].num_classes) +
            " classes)\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
      text += "  v" + std::to_string(v + 1) + " = " + to_string(trace.labellings[t].rows[v]) + "\n";
    }
  }
  output(common, text, nlohmann::json::parse(run_trace_json(trace)));
  return kOk;
}

int cmd_compare(const std::string& graph, const std::string& left, const std::string& right,
                const std::string& shift_text, std::optional<std::size_t> rounds,
                const Common& common) {
  const LabelledGraph g = resolve_graph(graph);
  const ShiftSpec shift = ShiftSpec::parse(shift_text);
  std::vector<Partition> left_parts;
  if (left == "wl") {
    left_parts = wl_rounds(g, rounds.value_or(default_rounds(g))).rounds;
  } else {
    left_parts = run_mpnn(g, resolve_spec(left, g, rounds)).partitions;
  }
  const std::size_t needed = shift(left_parts.size() - 1);
  std::vector<Partition> right_parts;
  if (right == "wl") {
    right_parts = wl_rounds(g, needed).rounds;
  } else {
    right_parts = run_mpnn(g, resolve_spec(right, g, is_named_spec(right)
                                                         ? std::optional<std::size_t>(needed)
                                                         : std::nullopt))
                      .partitions;
  }
  std::vector<ComparisonRecord> records{make_record(left, left_parts, right, right_parts, shift)};
  output(common, report_text(records), report_json(records));
  return records.front().verdict.holds ? kOk : kVerdictFailed;
}

struct SynthArgs {
  std::string graph;
  std::string target = "gnn-minus";
  std::string sigma = "relu";
  std::optional<std::size_t> rounds;
  std::string p;
  std::string r;
  bool uniform_q = false;
};

int cmd_synth(const SynthArgs& args, const Common& common) {
  const LabelledGraph g = resolve_graph(args.graph);
  const Activation sigma = parse_activation(args.sigma);
  const std::size_t rounds = args.rounds.value_or(default_rounds(g));
  SynthesisCertificate cert;
  if (args.target == "gnn-minus") {
    if (!args.r.empty()) throw ValidationError("--r applies to the dgnn6 target only");
    SynthesisOptions options;
    options.sigma = sigma;
    options.uniform_q = args.uniform_q;
    if (!args.p.empty()) options.p = ExactScalar::parse(args.p);
    cert = synthesize_gnn_minus(g, rounds, options);
  } else {
    if (!args.p.empty()) throw ValidationError("p is derived from m_p for the dgnn6 target");
    DegreeFunction norm = DegreeFunction::inv_sqrt_degree_plus_one();
    if (!args.r.empty()) {
      ExactScalar r = ExactScalar::parse(args.r);
      if (!r.is_rational()) throw ValidationError("r must be rational");
      norm = DegreeFunction::r_blend(r.rational_value());
    }
    cert = synthesize_dgnn6(g, rounds, sigma, norm, norm, args.uniform_q);
  }
  std::string text = "target " + cert.target + ", sigma " + to_string(cert.sigma) + ", p " +
                     cert.p.str() + (cert.m_p ? ", m_p " + cert.m_p->str() : std::string()) +
                     (cert.re_encoded ? ", labels re-encoded one-hot" : "") + "\n";
  for (std::size_t t = 0; t < cert.per_round.size(); ++t) {
    const SynthesisRound& r = cert.per_round[t];
    text += "round " + std::to_string(t + 1) + ": q " + r.q.str() + ", classes " +
            std::to_string(r.classes) + " (wl " + std::to_string(r.wl_classes) + ")" +
            (r.equivalent_to_wl ? ", equivalent" : ", refines") +
            (r.row_independent ? ", independent" : "") + "\n";
  }
  output(common, text, certificate_json(cert));
  return kOk;
}

int cmd_cases_list(const Common& common) {
  std::string text;
  nlohmann::json json = nlohmann::json::array();
  for (const auto& c : case_catalog()) {
    std::string families;
    for (const auto& f : c.families) families += (families.empty() ? "" : ",") + f;
    text += c.id + "  graph " + c.graph + "  families " + families + "  pair (" +
            std::to_string(c.pair.first + 1) + ", " + std::to_string(c.pair.second + 1) + ")  " +
            (c.merge_claim ? "merged by the architecture, separated by wl"
                           : "separated by the architecture, merged by wl") +
            "\n";
    json.push_back({{"case", c.id},
                    {"graph", c.graph},
                    {"families", c.families},
                    {"pair", {c.pair.first + 1, c.pair.second + 1}},
                    {"merge_claim", c.merge_claim},
                    {"wl_round", c.wl_round}});
  }
  output(common, text, json);
  return kOk;
}

int cmd_cases_verify(const CaseSpec& spec, bool all, const Common& common) {
  std::vector<CaseReport> reports;
  if (all) {
    for (const auto& c : case_catalog()) {
      CaseSpec s = spec;
      s.id = c.id;
      reports.push_back(verify_counterexample(s));
    }
  } else {
    if (spec.id.empty()) throw ValidationError("cases verify needs --case or --all");
    reports.push_back(verify_counterexample(spec));
  }
  std::string text;
  nlohmann::json json = nlohmann::json::array();
  bool passed = true;
  for (const auto& r : reports) {
    text += case_report_text(r);
    json.push_back(case_report_json(r));
    passed = passed && r.passed();
  }
  output(common, text, all ? json : json.front());
  return passed ? kOk : kVerdictFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact execution, comparison and synthesis of message-passing networks and WL"};
  app.require_subcommand(1);
  Common common;

  std::string graph;
  std::optional<std::size_t> rounds;

  CLI::App* wl = app.add_subcommand("wl", "Weisfeiler-Lehman colour refinement");
  wl->require_subcommand(1);
  CLI::App* wl_run_cmd = wl->add_subcommand("run", "Run WL and print the partition per round");
  wl_run_cmd->add_option("--graph", graph, "Built-in graph id or graph file")->required();
  wl_run_cmd->add_option("--rounds", rounds, "Exact round count (default: until stable)");
  add_common(wl_run_cmd, common);

  std::string spec_name;
  CLI::App* mpnn = app.add_subcommand("mpnn", "Message-passing networks");
  mpnn->require_subcommand(1);
  CLI::App* mpnn_run_cmd = mpnn->add_subcommand("run", "Execute a network exactly");
  mpnn_run_cmd->add_option("--graph", graph, "Built-in graph id or graph file")->required();
  mpnn_run_cmd->add_option("--spec", spec_name, "Named spec or spec JSON file")->required();
  mpnn_run_cmd->add_option("--rounds", rounds, "Round count");
  add_common(mpnn_run_cmd, common);

  std::string left, right, shift = "0";
  CLI::App* compare_cmd = app.add_subcommand("compare", "Decide whether LEFT is weaker than RIGHT");
  compare_cmd->add_option("--graph", graph, "Built-in graph id or graph file")->required();
  compare_cmd->add_option("--left", left, "wl, named spec or spec file")->required();
  compare_cmd->add_option("--right", right, "wl, named spec or spec file")->required();
  compare_cmd->add_option("--shift", shift, "0, +1 or xC");
  compare_cmd->add_option("--rounds", rounds, "Rounds of the left trace");
  add_common(compare_cmd, common);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Synthesize a network matching WL");
  synth_cmd->add_option("--graph", synth.graph, "Built-in graph id or graph file")->required();
  synth_cmd->add_option("--target", synth.target, "Architecture")
      ->check(CLI::IsMember({"gnn-minus", "dgnn6"}));
  synth_cmd->add_option("--sigma", synth.sigma, "Activation")
      ->check(CLI::IsMember({"relu", "sign"}));
  synth_cmd->add_option("--rounds", synth.rounds, "Round count (default: WL stabilization)");
  synth_cmd->add_option("--p", synth.p, "Self-loop weight for gnn-minus, in (0, 1)");
  synth_cmd->add_option("--r", synth.r, "dgnn6 normalization (r + (1-r)d)^(-1/2)");
  synth_cmd->add_flag("--uniform-q", synth.uniform_q, "Use q = 1 - 1/(n+1)^(n+1) every round");
  add_common(synth_cmd, common);

  CLI::App* cases = app.add_subcommand("cases", "Built-in counterexamples");
  cases->require_subcommand(1);
  CLI::App* cases_list_cmd = cases->add_subcommand("list", "List the built-in cases");
  add_common(cases_list_cmd, common);
  CaseSpec case_spec;
  bool all_cases = false;
  CLI::App* cases_verify_cmd = cases->add_subcommand("verify", "Verify a counterexample");
  cases_verify_cmd->add_option("--case", case_spec.id, "Case id");
  cases_verify_cmd->add_flag("--all", all_cases, "Verify every case");
  cases_verify_cmd->add_option("--trials", case_spec.trials, "Random weight trials");
  cases_verify_cmd->add_option("--seed", case_spec.seed, "Seed for the weight draws");
  add_common(cases_verify_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (wl_run_cmd->parsed()) return cmd_wl_run(graph, rounds, common);
    if (mpnn_run_cmd->parsed()) return cmd_mpnn_run(graph, spec_name, rounds, common);
    if (compare_cmd->parsed()) return cmd_compare(graph, left, right, shift, rounds, common);
    if (synth_cmd->parsed()) return cmd_synth(synth, common);
    if (cases_list_cmd->parsed()) return cmd_cases_list(common);
    if (cases_verify_cmd->parsed()) return cmd_cases_verify(case_spec, all_cases, common);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerdictFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
