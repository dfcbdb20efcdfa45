#pragma once

#include <cstddef>
#include <optional>

#include "gnnpower/layers.hpp"

namespace gnnpower {

/// Per-neighbour map h in Msg(x, y) = h(y).
struct MessageMap {
  enum class Kind {
    Identity,
    Zero,         // zero vector of `width`
    Constant,     // `constant`
    Linear,       // y W
    Activated,    // sigma(y W)
    InjectLabel,  // (h_inject(y, n)), 1-dim, for a fixed vertex count n
  };
  Kind kind = Kind::Identity;
  Matrix w;
  Vector constant;
  std::size_t width = 0;
  std::size_t n = 0;
  Activation sigma = Activation::None;

  Vector apply(const Vector& y) const;
  std::optional<std::size_t> input_width() const;
  std::size_t output_width(std::size_t input) const;
  nlohmann::json to_json() const;
  static MessageMap from_json(const nlohmann::json& j);
};

/// Post-sum map g in Upd(x, m) = comb(x, g(m)).
struct AggregateMap {
  enum class Kind {
    Identity,
    Linear,      // m W
    Activated,   // sigma(m W)
    PhiInverse,  // multiplicities over the previous round's distinct labels
  };
  Kind kind = Kind::Identity;
  Matrix w;
  Activation sigma = Activation::None;

  Vector apply(const Vector& m, RoundContext& ctx) const;
  /// nullopt for PhiInverse, whose width is the previous round's class count.
  std::optional<std::size_t> output_width(std::size_t input) const;
  nlohmann::json to_json() const;
  static AggregateMap from_json(const nlohmann::json& j);
};

struct Combiner {
  enum class Kind {
    Second,    // g
    Concat,    // (x, g)
    Affine,    // sigma(x W1 + g W2 + b)
    HashPair,  // zigzag of the dense id of (x, g) within the round, 1-dim
  };
  Kind kind = Kind::Second;
  Matrix w1, w2;
  Vector bias;
  Activation sigma = Activation::None;

  Vector apply(const Vector& x, const Vector& g, RoundContext& ctx) const;
  nlohmann::json to_json() const;
  static Combiner from_json(const nlohmann::json& j);
};

/// Msg(x, y) = h(y); Upd(x, m) = comb(x, g(m)).
class CombAggrLayer final : public Layer {
 public:
  CombAggrLayer(MessageMap h, AggregateMap g, Combiner comb);

  std::string family() const override { return "comb-aggr"; }
  bool uses_degree() const override { return false; }
  std::optional<std::size_t> input_width() const override;
  std::optional<std::size_t> output_width(std::size_t input) const override;
  Vector message(const Vector& x, const Vector& y, std::size_t, std::size_t) const override;
  Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const override;
  nlohmann::json to_json() const override;

  static std::shared_ptr<CombAggrLayer> from_json(const nlohmann::json& j);

 private:
  MessageMap h_;
  AggregateMap g_;
  Combiner comb_;
};

/// 0, 1, -1, 2, -2, ...
ExactScalar zigzag(std::size_t id);

}  // namespace gnnpower
