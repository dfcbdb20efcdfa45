#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gnnpower/degree_function.hpp"
#include "gnnpower/matrix.hpp"

namespace gnnpower {

struct PairLess {
  bool operator()(const std::pair<Vector, Vector>& a, const std::pair<Vector, Vector>& b) const {
    StructuralLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

/// Per-round state shared by the update calls of one round.
struct RoundContext {
  std::size_t n = 0;
  /// Labels of the previous round, indexed by vertex.
  const std::vector<Vector>* previous = nullptr;

  /// Hash interning: (own label, aggregated value) -> dense id in call order.
  std::map<std::pair<Vector, Vector>, std::size_t, PairLess> intern;

  /// Distinct previous labels in first-occurrence order with their injection
  /// codes; filled on first use.
  std::optional<std::vector<Vector>> dictionary;
  std::vector<std::uint64_t> dictionary_codes;
};

/// One round of an MPNN: m_v = sum over u in N(v) of message(l_v, l_u, f(v), f(u)),
/// then l_v <- update(l_v, m_v).
class Layer {
 public:
  virtual ~Layer() = default;

  virtual std::string family() const = 0;
  virtual bool uses_degree() const = 0;
  /// Required input label width; nullopt accepts any width.
  virtual std::optional<std::size_t> input_width() const = 0;
  /// Output width for a given input width; nullopt when it depends on the data.
  virtual std::optional<std::size_t> output_width(std::size_t input) const = 0;

  virtual Vector message(const Vector& x, const Vector& y, std::size_t fv,
                         std::size_t fu) const = 0;
  virtual Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const = 0;

  virtual nlohmann::json to_json() const = 0;
};

using LayerPtr = std::shared_ptr<const Layer>;

/// sigma(x W1 + m + b) with message y W2.
class GnnLayer final : public Layer {
 public:
  GnnLayer(Matrix w1, Matrix w2, Vector bias, Activation sigma);

  std::string family() const override { return "gnn"; }
  bool uses_degree() const override { return false; }
  std::optional<std::size_t> input_width() const override { return w1_.rows(); }
  std::optional<std::size_t> output_width(std::size_t) const override { return w1_.cols(); }
  Vector message(const Vector& x, const Vector& y, std::size_t, std::size_t) const override;
  Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const override;
  nlohmann::json to_json() const override;

 private:
  Matrix w1_, w2_;
  Vector bias_;
  Activation sigma_;
};

/// sigma(p x W + m - q 1) with message y W.
class GnnMinusLayer final : public Layer {
 public:
  GnnMinusLayer(Matrix w, ExactScalar p, ExactScalar q, Activation sigma);

  std::string family() const override { return "gnn-minus"; }
  bool uses_degree() const override { return false; }
  std::optional<std::size_t> input_width() const override { return w_.rows(); }
  std::optional<std::size_t> output_width(std::size_t) const override { return w_.cols(); }
  Vector message(const Vector& x, const Vector& y, std::size_t, std::size_t) const override;
  Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const override;
  nlohmann::json to_json() const override;

  const Matrix& weight() const { return w_; }
  const ExactScalar& p() const { return p_; }
  const ExactScalar& q() const { return q_; }

 private:
  Matrix w_;
  ExactScalar p_, q_;
  Activation sigma_;
};

struct DgnnParams {
  Matrix w1;  // 0x0 means the zero matrix
  Matrix w2;
  Vector bias;  // empty means zero
  ExactScalar p;
  DegreeFunction g = DegreeFunction::one();
  DegreeFunction h = DegreeFunction::one();
  Activation sigma = Activation::Relu;
};

/// The degree-normalized family:
///   message = (1/d_v)(x W1 + p g(d_v) h(d_v) x W2) + g(d_v) h(d_u) y W2
///   update  = sigma(m + b)
/// GCN and the tabulated dGNN variants are named instances.
class DgnnLayer final : public Layer {
 public:
  DgnnLayer(std::string family, DgnnParams params);

  std::string family() const override { return family_; }
  bool uses_degree() const override { return true; }
  std::optional<std::size_t> input_width() const override { return params_.w2.rows(); }
  std::optional<std::size_t> output_width(std::size_t) const override { return params_.w2.cols(); }
  Vector message(const Vector& x, const Vector& y, std::size_t fv, std::size_t fu) const override;
  Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const override;
  nlohmann::json to_json() const override;

  const DgnnParams& params() const { return params_; }

 private:
  std::string family_;
  DgnnParams params_;
};

/// Message (1), update concat(x, m): appends the degree.
class DegreeProbeLayer final : public Layer {
 public:
  std::string family() const override { return "degree-probe"; }
  bool uses_degree() const override { return false; }
  std::optional<std::size_t> input_width() const override { return std::nullopt; }
  std::optional<std::size_t> output_width(std::size_t input) const override { return input + 1; }
  Vector message(const Vector& x, const Vector& y, std::size_t, std::size_t) const override;
  Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const override;
  nlohmann::json to_json() const override;
};

/// Replays a degree-aware layer anonymously. Labels carry the degree as
/// their last component; the output keeps it there.
class LiftedLayer final : public Layer {
 public:
  explicit LiftedLayer(LayerPtr inner);

  std::string family() const override { return "lifted"; }
  bool uses_degree() const override { return false; }
  std::optional<std::size_t> input_width() const override;
  std::optional<std::size_t> output_width(std::size_t input) const override;
  Vector message(const Vector& x, const Vector& y, std::size_t, std::size_t) const override;
  Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const override;
  nlohmann::json to_json() const override;

 private:
  LayerPtr inner_;
};

/// Anonymous form of a dGNN layer with h = 1:
///   message = (y W2, 1)
///   update  = sigma(x W1 + g(z) z' + p g(z) h(z) x W2 + b) for m = (z', z)
class AnonymizedDgnnLayer final : public Layer {
 public:
  explicit AnonymizedDgnnLayer(DgnnParams params);

  std::string family() const override { return "anonymized-dgnn"; }
  bool uses_degree() const override { return false; }
  std::optional<std::size_t> input_width() const override { return params_.w2.rows(); }
  std::optional<std::size_t> output_width(std::size_t) const override { return params_.w2.cols(); }
  Vector message(const Vector& x, const Vector& y, std::size_t, std::size_t) const override;
  Vector update(const Vector& x, const Vector& m, RoundContext& ctx) const override;
  nlohmann::json to_json() const override;

 private:
  DgnnParams params_;
};

/// Optional fields supplied to builtin_layer; which are required depends on
/// the family.
struct LayerParams {
  std::optional<Matrix> w, w1, w2;
  std::optional<Vector> bias;
  std::optional<ExactScalar> p, q;
  std::optional<Rational> r;
  std::optional<DegreeFunction> g, h;
  Activation sigma = Activation::Relu;
};

/// Families: gnn, gnn-minus, gcn, dgnn1..dgnn6, dgnn (general form).
LayerPtr builtin_layer(const std::string& family, const LayerParams& params);

}  // namespace gnnpower
