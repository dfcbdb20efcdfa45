#include "gnnpower/layers.hpp"

#include <set>

#include "gnnpower/errors.hpp"
#include "gnnpower/spec_io.hpp"

namespace gnnpower {
namespace {

Vector activate_all(Vector v, Activation sigma) {
  for (auto& x : v) x = activate(x, sigma);
  return v;
}

Vector zero_bias_if_empty(Vector bias, std::size_t width) {
  if (bias.empty()) return Vector(width);
  if (bias.size() != width) {
    throw ValidationError("bias width " + std::to_string(bias.size()) + " does not match " +
                          std::to_string(width));
  }
  return bias;
}

void require_same_shape(const Matrix& a, const Matrix& b, const std::string& what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(what + " must have matching shapes");
  }
}

std::size_t degree_component(const ExactScalar& value) {
  if (!value.is_integer() || value.sign() <= 0) {
    throw ValidationError("expected a positive integer degree component, got " + value.str());
  }
  return value.rational_value().get_num().get_ui();
}

Vector concat(Vector a, const Vector& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

GnnLayer::GnnLayer(Matrix w1, Matrix w2, Vector bias, Activation sigma)
    : w1_(std::move(w1)), w2_(std::move(w2)), sigma_(sigma) {
  require_same_shape(w1_, w2_, "gnn weights W1 and W2");
  bias_ = zero_bias_if_empty(std::move(bias), w1_.cols());
}

Vector GnnLayer::message(const Vector&, const Vector& y, std::size_t, std::size_t) const {
  return row_times(y, w2_);
}

Vector GnnLayer::update(const Vector& x, const Vector& m, RoundContext&) const {
  return activate_all(add(add(row_times(x, w1_), m), bias_), sigma_);
}

nlohmann::json GnnLayer::to_json() const {
  return {{"family", family()},      {"w1", matrix_to_json(w1_)},
          {"w2", matrix_to_json(w2_)}, {"bias", vector_to_json(bias_)},
          {"sigma", to_string(sigma_)}};
}

GnnMinusLayer::GnnMinusLayer(Matrix w, ExactScalar p, ExactScalar q, Activation sigma)
    : w_(std::move(w)), p_(std::move(p)), q_(std::move(q)), sigma_(sigma) {
  if (p_.sign() < 0 || compare(p_, 1L) > 0) throw ValidationError("gnn-minus needs 0 <= p <= 1");
  if (q_.sign() < 0 || compare(q_, 1L) > 0) throw ValidationError("gnn-minus needs 0 <= q <= 1");
}

Vector GnnMinusLayer::message(const Vector&, const Vector& y, std::size_t, std::size_t) const {
  return row_times(y, w_);
}

Vector GnnMinusLayer::update(const Vector& x, const Vector& m, RoundContext&) const {
  Vector out = add(scale(p_, row_times(x, w_)), m);
  for (auto& value : out) value = activate(value - q_, sigma_);
  return out;
}

nlohmann::json GnnMinusLayer::to_json() const {
  return {{"family", family()}, {"w", matrix_to_json(w_)}, {"p", p_.str()},
          {"q", q_.str()},      {"sigma", to_string(sigma_)}};
}

DgnnLayer::DgnnLayer(std::string family, DgnnParams params)
    : family_(std::move(family)), params_(std::move(params)) {
  if (params_.w1.rows() != 0 || params_.w1.cols() != 0) {
    require_same_shape(params_.w1, params_.w2, "dgnn weights W1 and W2");
  }
  if (params_.p.sign() < 0 || compare(params_.p, 1L) > 0) {
    throw ValidationError("dgnn needs 0 <= p <= 1, got " + params_.p.str());
  }
  params_.bias = zero_bias_if_empty(std::move(params_.bias), params_.w2.cols());
}

Vector DgnnLayer::message(const Vector& x, const Vector& y, std::size_t fv, std::size_t fu) const {
  const ExactScalar gv = params_.g(fv);
  Vector xw2 = row_times(x, params_.w2);
  Vector self = scale(params_.p * gv * params_.h(fv), xw2);
  if (params_.w1.rows() != 0) self = add(self, row_times(x, params_.w1));
  const ExactScalar inv_dv(Rational(1, static_cast<unsigned long>(fv)));
  Vector neighbour = scale(gv * params_.h(fu), row_times(y, params_.w2));
  return add(scale(inv_dv, self), neighbour);
}

Vector DgnnLayer::update(const Vector&, const Vector& m, RoundContext&) const {
  return activate_all(add(m, params_.bias), params_.sigma);
}

nlohmann::json DgnnLayer::to_json() const {
  nlohmann::json out = {{"family", family_}};
  if (params_.w1.rows() != 0) out["w1"] = matrix_to_json(params_.w1);
  out["w2"] = matrix_to_json(params_.w2);
  out["bias"] = vector_to_json(params_.bias);
  out["p"] = params_.p.str();
  out["g"] = params_.g.to_json();
  out["h"] = params_.h.to_json();
  out["sigma"] = to_string(params_.sigma);
  return out;
}

Vector DegreeProbeLayer::message(const Vector&, const Vector&, std::size_t, std::size_t) const {
  return {ExactScalar(1L)};
}

Vector DegreeProbeLayer::update(const Vector& x, const Vector& m, RoundContext&) const {
  return concat(x, m);
}

nlohmann::json DegreeProbeLayer::to_json() const { return {{"family", family()}}; }

LiftedLayer::LiftedLayer(LayerPtr inner) : inner_(std::move(inner)) {
  if (!inner_) throw ValidationError("lifted layer needs an inner layer");
}

std::optional<std::size_t> LiftedLayer::input_width() const {
  auto inner = inner_->input_width();
  if (!inner) return std::nullopt;
  return *inner + 1;
}

std::optional<std::size_t> LiftedLayer::output_width(std::size_t input) const {
  auto inner = inner_->output_width(input - 1);
  if (!inner) return std::nullopt;
  return *inner + 1;
}

Vector LiftedLayer::message(const Vector& x, const Vector& y, std::size_t, std::size_t) const {
  Vector xs(x.begin(), x.end() - 1);
  Vector ys(y.begin(), y.end() - 1);
  return inner_->message(xs, ys, degree_component(x.back()), degree_component(y.back()));
}

Vector LiftedLayer::update(const Vector& x, const Vector& m, RoundContext& ctx) const {
  Vector xs(x.begin(), x.end() - 1);
  Vector out = inner_->update(xs, m, ctx);
  out.push_back(x.back());
  return out;
}

nlohmann::json LiftedLayer::to_json() const {
  return {{"family", family()}, {"inner", inner_->to_json()}};
}

AnonymizedDgnnLayer::AnonymizedDgnnLayer(DgnnParams params) : params_(std::move(params)) {
  if (!params_.h.is_constant_one()) {
    throw ValidationError("anonymization requires h to be constantly 1");
  }
  params_.bias = zero_bias_if_empty(std::move(params_.bias), params_.w2.cols());
}

Vector AnonymizedDgnnLayer::message(const Vector&, const Vector& y, std::size_t,
                                    std::size_t) const {
  Vector out = row_times(y, params_.w2);
  out.push_back(ExactScalar(1L));
  return out;
}

Vector AnonymizedDgnnLayer::update(const Vector& x, const Vector& m, RoundContext&) const {
  // m = (z', z) with z the neighbour count, i.e. the degree.
  Vector z_prime(m.begin(), m.end() - 1);
  const std::size_t z = degree_component(m.back());
  const ExactScalar gz = params_.g(z);
  Vector out = add(scale(gz, z_prime), scale(params_.p * gz * params_.h(z), row_times(x, params_.w2)));
  if (params_.w1.rows() != 0) out = add(out, row_times(x, params_.w1));
  return activate_all(add(out, params_.bias), params_.sigma);
}

nlohmann::json AnonymizedDgnnLayer::to_json() const {
  nlohmann::json out = {{"family", family()}};
  if (params_.w1.rows() != 0) out["w1"] = matrix_to_json(params_.w1);
  out["w2"] = matrix_to_json(params_.w2);
  out["bias"] = vector_to_json(params_.bias);
  out["p"] = params_.p.str();
  out["g"] = params_.g.to_json();
  out["h"] = params_.h.to_json();
  out["sigma"] = to_string(params_.sigma);
  return out;
}

LayerPtr builtin_layer(const std::string& family, const LayerParams& params) {
  std::set<std::string> supplied;
  if (params.w) supplied.insert("w");
  if (params.w1) supplied.insert("w1");
  if (params.w2) supplied.insert("w2");
  if (params.bias) supplied.insert("bias");
  if (params.p) supplied.insert("p");
  if (params.q) supplied.insert("q");
  if (params.r) supplied.insert("r");
  if (params.g) supplied.insert("g");
  if (params.h) supplied.insert("h");

  auto expect = [&](std::set<std::string> required, std::set<std::string> optional) {
    for (const auto& name : required) {
      if (!supplied.count(name)) {
        throw ValidationError("family " + family + " requires parameter '" + name + "'");
      }
    }
    for (const auto& name : supplied) {
      if (!required.count(name) && !optional.count(name)) {
        throw ValidationError("family " + family + " does not take parameter '" + name + "'");
      }
    }
  };
  const Vector bias = params.bias.value_or(Vector{});

  if (family == "gnn") {
    expect({"w1", "w2"}, {"bias"});
    return std::make_shared<GnnLayer>(*params.w1, *params.w2, bias, params.sigma);
  }
  if (family == "gnn-minus") {
    expect({"w", "p", "q"}, {});
    return std::make_shared<GnnMinusLayer>(*params.w, *params.p, *params.q, params.sigma);
  }
  if (family == "dgnn") {
    expect({"w2", "p", "g", "h"}, {"w1", "bias"});
    DgnnParams d{params.w1.value_or(Matrix{}), *params.w2, bias, *params.p, *params.g, *params.h,
                 params.sigma};
    return std::make_shared<DgnnLayer>(family, std::move(d));
  }

  DgnnParams d;
  d.sigma = params.sigma;
  d.bias = bias;
  d.p = ExactScalar();
  if (family == "dgnn6") {
    expect({"w", "r", "p"}, {"bias"});
    d.g = DegreeFunction::r_blend(*params.r);
    d.h = d.g;
    d.p = *params.p;
  } else {
    expect({"w"}, {"bias"});
    if (family == "gcn" || family == "dgnn4") {
      d.g = DegreeFunction::inv_sqrt_degree_plus_one();
      d.h = d.g;
      d.p = ExactScalar(1L);
    } else if (family == "dgnn1") {
      d.g = DegreeFunction::inv_degree();
    } else if (family == "dgnn2") {
      d.g = DegreeFunction::inv_sqrt_degree();
      d.h = d.g;
    } else if (family == "dgnn3") {
      d.g = DegreeFunction::inv_degree_plus_one();
      d.p = ExactScalar(1L);
    } else if (family == "dgnn5") {
      d.g = DegreeFunction::inv_sqrt_degree();
      d.h = d.g;
      d.w1 = *params.w;
    } else {
      throw ValidationError("unknown layer family '" + family + "'");
    }
  }
  d.w2 = *params.w;
  return std::make_shared<DgnnLayer>(family, std::move(d));
}

}  // namespace gnnpower
