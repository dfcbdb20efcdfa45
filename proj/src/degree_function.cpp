#include "gnnpower/degree_function.hpp"

#include "gnnpower/errors.hpp"

namespace gnnpower {

DegreeFunction DegreeFunction::constant(const ExactScalar& c) {
  if (c.sign() <= 0) throw ValidationError("degree function must be positive, got " + c.str());
  DegreeFunction f(Kind::Constant);
  f.constant_ = c;
  return f;
}

DegreeFunction DegreeFunction::r_blend(const Rational& r) {
  if (r <= 0 || r > 1) throw ValidationError("r must satisfy 0 < r <= 1, got " + r.get_str());
  DegreeFunction f(Kind::RBlend);
  f.r_ = r;
  return f;
}

DegreeFunction DegreeFunction::table(std::map<std::size_t, ExactScalar> values) {
  for (const auto& [d, value] : values) {
    if (value.sign() <= 0) {
      throw ValidationError("degree function must be positive, got " + value.str() +
                            " at degree " + std::to_string(d));
    }
  }
  DegreeFunction f(Kind::Table);
  f.table_ = std::move(values);
  return f;
}

ExactScalar DegreeFunction::operator()(std::size_t degree) const {
  if (degree == 0 && kind_ != Kind::Constant && kind_ != Kind::Table) {
    throw ValidationError("degree function evaluated at degree 0");
  }
  const Rational d(static_cast<unsigned long>(degree));
  switch (kind_) {
    case Kind::Constant:
      return constant_;
    case Kind::InvDegree:
      return ExactScalar(Rational(1) / d);
    case Kind::InvSqrtDegree:
      return ExactScalar::sqrt_of(Rational(1) / d);
    case Kind::InvDegreePlusOne:
      return ExactScalar(Rational(1) / (d + 1));
    case Kind::InvSqrtDegreePlusOne:
      return ExactScalar::sqrt_of(Rational(1) / (d + 1));
    case Kind::RBlend:
      return ExactScalar::sqrt_of(Rational(1) / (r_ + (1 - r_) * d));
    case Kind::Table: {
      auto it = table_.find(degree);
      if (it == table_.end()) {
        throw ValidationError("degree table has no entry for degree " + std::to_string(degree));
      }
      return it->second;
    }
  }
  throw ValidationError("unknown degree function");
}

bool DegreeFunction::is_constant_one() const {
  switch (kind_) {
    case Kind::Constant:
      return constant_ == ExactScalar(1L);
    case Kind::RBlend:
      return r_ == 1;
    case Kind::Table:
      for (const auto& [d, value] : table_) {
        if (!(value == ExactScalar(1L))) return false;
      }
      return true;
    default:
      return false;
  }
}

nlohmann::json DegreeFunction::to_json() const {
  switch (kind_) {
    case Kind::Constant:
      return {{"kind", "constant"}, {"value", constant_.str()}};
    case Kind::InvDegree:
      return {{"kind", "inv_degree"}};
    case Kind::InvSqrtDegree:
      return {{"kind", "inv_sqrt_degree"}};
    case Kind::InvDegreePlusOne:
      return {{"kind", "inv_degree_plus_one"}};
    case Kind::InvSqrtDegreePlusOne:
      return {{"kind", "inv_sqrt_degree_plus_one"}};
    case Kind::RBlend:
      return {{"kind", "r_blend"}, {"r", r_.get_str()}};
    case Kind::Table: {
      nlohmann::json values = nlohmann::json::object();
      for (const auto& [d, value] : table_) values[std::to_string(d)] = value.str();
      return {{"kind", "table"}, {"values", values}};
    }
  }
  return {};
}

DegreeFunction DegreeFunction::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return constant(ExactScalar::parse(j.at("value").get<std::string>()));
  if (kind == "inv_degree") return inv_degree();
  if (kind == "inv_sqrt_degree") return inv_sqrt_degree();
  if (kind == "inv_degree_plus_one") return inv_degree_plus_one();
  if (kind == "inv_sqrt_degree_plus_one") return inv_sqrt_degree_plus_one();
  if (kind == "r_blend") {
    ExactScalar r = ExactScalar::parse(j.at("r").get<std::string>());
    if (!r.is_rational()) throw ValidationError("r must be rational");
    return r_blend(r.rational_value());
  }
  if (kind == "table") {
    std::map<std::size_t, ExactScalar> values;
    for (const auto& [key, value] : j.at("values").items()) {
      values.emplace(std::stoul(key), ExactScalar::parse(value.get<std::string>()));
    }
    return table(std::move(values));
  }
  throw ParseError("unknown degree function kind '" + kind + "'");
}

}  // namespace gnnpower
