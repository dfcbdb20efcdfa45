#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gnnpower/labelling.hpp"

namespace gnnpower {

struct ShiftSpec {
  enum class Kind { Identity, PlusOne, TimesC };
  Kind kind = Kind::Identity;
  std::size_t c = 1;  // TimesC only; positive

  static ShiftSpec identity() { return {}; }
  static ShiftSpec plus_one() { return {Kind::PlusOne, 1}; }
  static ShiftSpec times(std::size_t c);
  /// "0", "+1" or "xC".
  static ShiftSpec parse(const std::string& text);

  std::size_t operator()(std::size_t t) const;
  std::string str() const;
};

struct Violation {
  std::size_t round = 0;  // round of the left trace
  std::size_t v = 0;      // 0-based
  std::size_t w = 0;
};

struct CompareVerdict {
  bool holds = true;
  /// Present iff holds is false.
  std::optional<Violation> first_violation;
};

/// Whether A is g-weaker than B: for every t in 0..T_A the partition of B at
/// shift(t) refines the partition of A at t. Throws ValidationError when B
/// has fewer than shift(T_A) rounds or the vertex counts differ.
CompareVerdict weaker(const std::vector<Partition>& a, const std::vector<Partition>& b,
                      const ShiftSpec& shift = {});

/// Weaker in both directions with the identity shift. Throws ValidationError
/// on a round count mismatch.
bool equally_strong(const std::vector<Partition>& a, const std::vector<Partition>& b);

struct ComparisonRecord {
  std::string left_name;
  std::string right_name;
  ShiftSpec shift;
  std::vector<std::size_t> left_classes;  // per round
  std::vector<std::size_t> right_classes;
  CompareVerdict verdict;
};

/// Runs weaker and collects per-round class counts for reporting.
ComparisonRecord make_record(const std::string& left_name, const std::vector<Partition>& left,
                             const std::string& right_name, const std::vector<Partition>& right,
                             const ShiftSpec& shift);

/// Text summary; witnesses are printed with 1-based vertex ids.
std::string report_text(const std::vector<ComparisonRecord>& records);
nlohmann::json report_json(const std::vector<ComparisonRecord>& records);

}  // namespace gnnpower
