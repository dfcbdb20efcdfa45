#include "gnnpower/comb_aggr.hpp"

#include <set>

#include "gnnpower/errors.hpp"
#include "gnnpower/injection.hpp"
#include "gnnpower/spec_io.hpp"

namespace gnnpower {
namespace {

Vector activate_all(Vector v, Activation sigma) {
  for (auto& x : v) x = activate(x, sigma);
  return v;
}

template <typename Kind>
Kind kind_from(const nlohmann::json& j, const std::vector<std::pair<std::string, Kind>>& names) {
  const std::string name = j.at("kind").get<std::string>();
  for (const auto& [text, kind] : names) {
    if (text == name) return kind;
  }
  throw ParseError("unknown kind '" + name + "'");
}

template <typename Kind>
std::string kind_name(Kind kind, const std::vector<std::pair<std::string, Kind>>& names) {
  for (const auto& [text, k] : names) {
    if (k == kind) return text;
  }
  return "?";
}

const std::vector<std::pair<std::string, MessageMap::Kind>> kMessageKinds = {
    {"identity", MessageMap::Kind::Identity},   {"zero", MessageMap::Kind::Zero},
    {"constant", MessageMap::Kind::Constant},   {"linear", MessageMap::Kind::Linear},
    {"activated", MessageMap::Kind::Activated}, {"inject", MessageMap::Kind::InjectLabel},
};

const std::vector<std::pair<std::string, AggregateMap::Kind>> kAggregateKinds = {
    {"identity", AggregateMap::Kind::Identity},
    {"linear", AggregateMap::Kind::Linear},
    {"activated", AggregateMap::Kind::Activated},
    {"phi_inverse", AggregateMap::Kind::PhiInverse},
};

const std::vector<std::pair<std::string, Combiner::Kind>> kCombinerKinds = {
    {"second", Combiner::Kind::Second},
    {"concat", Combiner::Kind::Concat},
    {"affine", Combiner::Kind::Affine},
    {"hash_pair", Combiner::Kind::HashPair},
};

}  // namespace

ExactScalar zigzag(std::size_t id) {
  const long half = static_cast<long>((id + 1) / 2);
  return ExactScalar(id % 2 == 1 ? half : -half);
}

Vector MessageMap::apply(const Vector& y) const {
  switch (kind) {
    case Kind::Identity:
      return y;
    case Kind::Zero:
      return Vector(width);
    case Kind::Constant:
      return constant;
    case Kind::Linear:
      return row_times(y, w);
    case Kind::Activated:
      return activate_all(row_times(y, w), sigma);
    case Kind::InjectLabel:
      return {ExactScalar(h_inject(y, n))};
  }
  return y;
}

std::optional<std::size_t> MessageMap::input_width() const {
  if (kind == Kind::Linear || kind == Kind::Activated) return w.rows();
  return std::nullopt;
}

std::size_t MessageMap::output_width(std::size_t input) const {
  switch (kind) {
    case Kind::Identity:
      return input;
    case Kind::Zero:
      return width;
    case Kind::Constant:
      return constant.size();
    case Kind::Linear:
    case Kind::Activated:
      return w.cols();
    case Kind::InjectLabel:
      return 1;
  }
  return input;
}

nlohmann::json MessageMap::to_json() const {
  nlohmann::json out = {{"kind", kind_name(kind, kMessageKinds)}};
  if (kind == Kind::Zero) out["width"] = width;
  if (kind == Kind::Constant) out["constant"] = vector_to_json(constant);
  if (kind == Kind::Linear || kind == Kind::Activated) out["w"] = matrix_to_json(w);
  if (kind == Kind::Activated) out["sigma"] = to_string(sigma);
  if (kind == Kind::InjectLabel) out["n"] = n;
  return out;
}

MessageMap MessageMap::from_json(const nlohmann::json& j) {
  MessageMap m;
  m.kind = kind_from(j, kMessageKinds);
  if (m.kind == Kind::Zero) m.width = j.at("width").get<std::size_t>();
  if (m.kind == Kind::Constant) m.constant = vector_from_json(j.at("constant"));
  if (m.kind == Kind::Linear || m.kind == Kind::Activated) m.w = matrix_from_json(j.at("w"));
  if (m.kind == Kind::Activated) m.sigma = parse_activation(j.at("sigma").get<std::string>());
  if (m.kind == Kind::InjectLabel) m.n = j.at("n").get<std::size_t>();
  return m;
}

Vector AggregateMap::apply(const Vector& m, RoundContext& ctx) const {
  switch (kind) {
    case Kind::Identity:
      return m;
    case Kind::Linear:
      return row_times(m, w);
    case Kind::Activated:
      return activate_all(row_times(m, w), sigma);
    case Kind::PhiInverse: {
      if (!ctx.previous) throw ValidationError("phi_inverse needs the previous labelling");
      if (!ctx.dictionary) {
        std::set<Vector, StructuralLess> seen;
        ctx.dictionary.emplace();
        for (const auto& label : *ctx.previous) {
          if (seen.insert(label).second) {
            ctx.dictionary->push_back(label);
            ctx.dictionary_codes.push_back(tau(label));
          }
        }
      }
      if (m.size() != 1 || !m[0].is_rational()) {
        throw ValidationError("phi_inverse expects a 1-dim rational aggregate");
      }
      std::vector<std::size_t> counts = phi_inverse(m[0].rational_value(), ctx.n, ctx.dictionary_codes);
      Vector out;
      out.reserve(counts.size());
      for (auto c : counts) out.emplace_back(static_cast<long>(c));
      return out;
    }
  }
  return m;
}

std::optional<std::size_t> AggregateMap::output_width(std::size_t input) const {
  switch (kind) {
    case Kind::Identity:
      return input;
    case Kind::Linear:
    case Kind::Activated:
      return w.cols();
    case Kind::PhiInverse:
      return std::nullopt;
  }
  return input;
}

nlohmann::json AggregateMap::to_json() const {
  nlohmann::json out = {{"kind", kind_name(kind, kAggregateKinds)}};
  if (kind == Kind::Linear || kind == Kind::Activated) out["w"] = matrix_to_json(w);
  if (kind == Kind::Activated) out["sigma"] = to_string(sigma);
  return out;
}

AggregateMap AggregateMap::from_json(const nlohmann::json& j) {
  AggregateMap g;
  g.kind = kind_from(j, kAggregateKinds);
  if (g.kind == Kind::Linear || g.kind == Kind::Activated) g.w = matrix_from_json(j.at("w"));
  if (g.kind == Kind::Activated) g.sigma = parse_activation(j.at("sigma").get<std::string>());
  return g;
}

Vector Combiner::apply(const Vector& x, const Vector& g, RoundContext& ctx) const {
  switch (kind) {
    case Kind::Second:
      return g;
    case Kind::Concat: {
      Vector out = x;
      out.insert(out.end(), g.begin(), g.end());
      return out;
    }
    case Kind::Affine: {
      Vector out = add(row_times(x, w1), row_times(g, w2));
      if (!bias.empty()) out = add(out, bias);
      return activate_all(std::move(out), sigma);
    }
    case Kind::HashPair: {
      auto [it, inserted] = ctx.intern.try_emplace({x, g}, ctx.intern.size());
      return {zigzag(it->second)};
    }
  }
  return g;
}

nlohmann::json Combiner::to_json() const {
  nlohmann::json out = {{"kind", kind_name(kind, kCombinerKinds)}};
  if (kind == Kind::Affine) {
    out["w1"] = matrix_to_json(w1);
    out["w2"] = matrix_to_json(w2);
    out["bias"] = vector_to_json(bias);
    out["sigma"] = to_string(sigma);
  }
  return out;
}

Combiner Combiner::from_json(const nlohmann::json& j) {
  Combiner c;
  c.kind = kind_from(j, kCombinerKinds);
  if (c.kind == Kind::Affine) {
    c.w1 = matrix_from_json(j.at("w1"));
    c.w2 = matrix_from_json(j.at("w2"));
    if (j.contains("bias")) c.bias = vector_from_json(j.at("bias"));
    c.sigma = parse_activation(j.value("sigma", std::string("none")));
  }
  return c;
}

CombAggrLayer::CombAggrLayer(MessageMap h, AggregateMap g, Combiner comb)
    : h_(std::move(h)), g_(std::move(g)), comb_(std::move(comb)) {
  if (comb_.kind == Combiner::Kind::Affine) {
    if (comb_.w1.cols() != comb_.w2.cols()) {
      throw ValidationError("affine combiner weights must share an output width");
    }
    if (!comb_.bias.empty() && comb_.bias.size() != comb_.w1.cols()) {
      throw ValidationError("affine combiner bias width mismatch");
    }
  }
  if (h_.kind == MessageMap::Kind::InjectLabel && h_.n == 0) {
    throw ValidationError("inject message map needs the vertex count n");
  }
}

std::optional<std::size_t> CombAggrLayer::input_width() const {
  if (comb_.kind == Combiner::Kind::Affine) return comb_.w1.rows();
  return h_.input_width();
}

std::optional<std::size_t> CombAggrLayer::output_width(std::size_t input) const {
  switch (comb_.kind) {
    case Combiner::Kind::Second:
      return g_.output_width(h_.output_width(input));
    case Combiner::Kind::Concat: {
      auto g = g_.output_width(h_.output_width(input));
      if (!g) return std::nullopt;
      return input + *g;
    }
    case Combiner::Kind::Affine:
      return comb_.w1.cols();
    case Combiner::Kind::HashPair:
      return 1;
  }
  return std::nullopt;
}

Vector CombAggrLayer::message(const Vector&, const Vector& y, std::size_t, std::size_t) const {
  return h_.apply(y);
}

Vector CombAggrLayer::update(const Vector& x, const Vector& m, RoundContext& ctx) const {
  Vector g = g_.apply(m, ctx);
  if (comb_.kind == Combiner::Kind::Affine && g.size() != comb_.w2.rows()) {
    throw ValidationError("aggregate width " + std::to_string(g.size()) +
                          " does not match combiner W2 rows " + std::to_string(comb_.w2.rows()));
  }
  return comb_.apply(x, g, ctx);
}

nlohmann::json CombAggrLayer::to_json() const {
  return {{"family", family()}, {"h", h_.to_json()}, {"g", g_.to_json()}, {"comb", comb_.to_json()}};
}

std::shared_ptr<CombAggrLayer> CombAggrLayer::from_json(const nlohmann::json& j) {
  return std::make_shared<CombAggrLayer>(MessageMap::from_json(j.at("h")),
                                         AggregateMap::from_json(j.at("g")),
                                         Combiner::from_json(j.at("comb")));
}

}  // namespace gnnpower
