#include "gnnpower/compare.hpp"

#include <sstream>

#include "gnnpower/errors.hpp"

namespace gnnpower {

ShiftSpec ShiftSpec::times(std::size_t c) {
  if (c == 0) throw ValidationError("shift factor must be positive");
  return {Kind::TimesC, c};
}

ShiftSpec ShiftSpec::parse(const std::string& text) {
  if (text == "0" || text == "id" || text == "identity") return identity();
  if (text == "+1") return plus_one();
  if (text.size() >= 2 && text[0] == 'x') {
    std::size_t used = 0;
    unsigned long c = 0;
    try {
      c = std::stoul(text.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == text.size() - 1 && c > 0) return times(c);
  }
  throw ParseError("shift must be 0, +1 or xC, got '" + text + "'");
}

std::size_t ShiftSpec::operator()(std::size_t t) const {
  switch (kind) {
    case Kind::Identity: return t;
    case Kind::PlusOne: return t + 1;
    case Kind::TimesC: return c * t;
  }
  return t;
}

std::string ShiftSpec::str() const {
  switch (kind) {
    case Kind::Identity: return "0";
    case Kind::PlusOne: return "+1";
    case Kind::TimesC: return "x" + std::to_string(c);
  }
  return "0";
}

CompareVerdict weaker(const std::vector<Partition>& a, const std::vector<Partition>& b,
                      const ShiftSpec& shift) {
  if (a.empty()) throw ValidationError("left trace has no rounds");
  const std::size_t t_a = a.size() - 1;
  if (b.size() <= shift(t_a)) {
    throw ValidationError("right trace has " + std::to_string(b.size() - 1) +
                          " rounds, needs " + std::to_string(shift(t_a)));
  }
  CompareVerdict out;
  for (std::size_t t = 0; t <= t_a; ++t) {
    const Partition& fine = b[shift(t)];
    if (fine.size() != a[t].size()) throw ValidationError("traces are over different vertex sets");
    RefineResult r = refines(fine, a[t]);
    if (!r.holds) {
      out.holds = false;
      out.first_violation = Violation{t, r.witness->first, r.witness->second};
      return out;
    }
  }
  return out;
}

bool equally_strong(const std::vector<Partition>& a, const std::vector<Partition>& b) {
  if (a.size() != b.size()) {
    throw ValidationError("round count mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  return weaker(a, b).holds && weaker(b, a).holds;
}

ComparisonRecord make_record(const std::string& left_name, const std::vector<Partition>& left,
                             const std::string& right_name, const std::vector<Partition>& right,
                             const ShiftSpec& shift) {
  ComparisonRecord rec;
  rec.left_name = left_name;
  rec.right_name = right_name;
  rec.shift = shift;
  for (const auto& p : left) rec.left_classes.push_back(p.num_classes);
  for (const auto& p : right) rec.right_classes.push_back(p.num_classes);
  rec.verdict = weaker(left, right, shift);
  return rec;
}

namespace {

std::string relation(const ComparisonRecord& r) {
  std::string symbol = r.verdict.holds ? "<=" : "!<=";
  if (r.shift.kind != ShiftSpec::Kind::Identity) symbol += "[" + r.shift.str() + "]";
  return r.left_name + " " + symbol + " " + r.right_name;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace

std::string report_text(const std::vector<ComparisonRecord>& records) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& r : records) {
    out << relation(r) << "\n";
    out << "  classes " << r.left_name << ": " << join(r.left_classes) << "\n";
    out << "  classes " << r.right_name << ": " << join(r.right_classes) << "\n";
    if (r.verdict.first_violation) {
      const Violation& w = *r.verdict.first_violation;
      out << "  witness: round " << w.round << ", v" << w.v + 1 << " and v" << w.w + 1
          << " share a " << r.right_name << " label at round " << r.shift(w.round)
          << " but differ under " << r.left_name << "\n";
    }
    passed += r.verdict.holds ? 1 : 0;
  }
  if (!records.empty()) {
    out << "holds: " << passed << ", fails: " << records.size() - passed << "\n";
  }
  return out.str();
}

nlohmann::json report_json(const std::vector<ComparisonRecord>& records) {
  nlohmann::json out;
  nlohmann::json items = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& r : records) {
    nlohmann::json item;
    item["left"] = r.left_name;
    item["right"] = r.right_name;
    item["shift"] = r.shift.str();
    item["holds"] = r.verdict.holds;
    item["left_classes"] = r.left_classes;
    item["right_classes"] = r.right_classes;
    if (r.verdict.first_violation) {
      const Violation& w = *r.verdict.first_violation;
      item["witness"] = {{"round", w.round}, {"v", w.v + 1}, {"w", w.w + 1}};
    } else {
      item["witness"] = nullptr;
    }
    items.push_back(item);
    passed += r.verdict.holds ? 1 : 0;
  }
  out["comparisons"] = items;
  out["holds"] = passed;
  out["fails"] = records.size() - passed;
  return out;
}

}  // namespace gnnpower
