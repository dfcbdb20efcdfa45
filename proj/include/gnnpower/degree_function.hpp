#pragma once

#include <cstddef>
#include <map>
#include <string>

#include <json.hpp>

#include "gnnpower/exact_scalar.hpp"

namespace gnnpower {

/// A positive scalar function of vertex degree (g and h in the dGNN family).
class DegreeFunction {
 public:
  enum class Kind {
    Constant,
    InvDegree,             // 1/d
    InvSqrtDegree,         // d^(-1/2)
    InvDegreePlusOne,      // 1/(1+d)
    InvSqrtDegreePlusOne,  // (1+d)^(-1/2)
    RBlend,                // (r + (1-r)d)^(-1/2), 0 < r <= 1
    Table,
  };

  static DegreeFunction one() { return constant(ExactScalar(1L)); }
  static DegreeFunction constant(const ExactScalar& c);
  static DegreeFunction inv_degree() { return DegreeFunction(Kind::InvDegree); }
  static DegreeFunction inv_sqrt_degree() { return DegreeFunction(Kind::InvSqrtDegree); }
  static DegreeFunction inv_degree_plus_one() { return DegreeFunction(Kind::InvDegreePlusOne); }
  static DegreeFunction inv_sqrt_degree_plus_one() {
    return DegreeFunction(Kind::InvSqrtDegreePlusOne);
  }
  static DegreeFunction r_blend(const Rational& r);
  /// Values must be positive; evaluating an absent degree throws.
  static DegreeFunction table(std::map<std::size_t, ExactScalar> values);

  Kind kind() const { return kind_; }
  ExactScalar operator()(std::size_t degree) const;

  /// True when the function is identically 1 on every degree.
  bool is_constant_one() const;

  nlohmann::json to_json() const;
  static DegreeFunction from_json(const nlohmann::json& j);

 private:
  explicit DegreeFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  ExactScalar constant_;
  Rational r_;
  std::map<std::size_t, ExactScalar> table_;
};

}  // namespace gnnpower
