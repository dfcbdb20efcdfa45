#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gnnpower/graph.hpp"

namespace gnnpower {

/// "fig1", "g1", "g2" or "g3". Throws ValidationError for other ids.
LabelledGraph builtin_graph(const std::string& id);
bool is_builtin_graph(const std::string& id);

/// Built-in id or a path to a graph file.
LabelledGraph resolve_graph(const std::string& id_or_path);

struct CaseSpec {
  std::string id;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
};

struct CaseInfo {
  std::string id;
  std::string graph;
  std::vector<std::string> families;
  std::pair<std::size_t, std::size_t> pair;  // 0-based
  /// True when the architectures are claimed to merge the pair while WL
  /// separates it; false for the cases where the architecture separates a
  /// pair that WL merges.
  bool merge_claim = true;
  std::size_t wl_round = 1;
};

/// All known cases in listing order.
std::vector<CaseInfo> case_catalog();
const CaseInfo& case_info(const std::string& id);

struct FamilyCheck {
  std::string family;
  /// diag(g)(A + pI)diag(h) L (+ L when W1 = W), exact.
  std::vector<Vector> pre_weight;
  bool pair_rows_equal = false;
  std::size_t trials_equal = 0;
  std::size_t trials_separated = 0;
};

struct CaseReport {
  CaseInfo info;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<FamilyCheck> families;
  bool structural_ok = false;
  bool trials_ok = false;
  /// WL labels of the pair differ at info.wl_round.
  bool wl_separates = false;
  bool wl_ok = false;
  /// Extra check on fig1 cases: the architecture is weaker than WL one step ahead for 3 rounds.
  bool plus_one_checked = false;
  bool plus_one_holds = false;

  bool passed() const;
};

/// Structural, randomized and WL checks of one case. Never throws on a
/// failing check; the verdict is in the report.
CaseReport verify_counterexample(const CaseSpec& spec);

std::string case_report_text(const CaseReport& report);
nlohmann::json case_report_json(const CaseReport& report);

}  // namespace gnnpower
