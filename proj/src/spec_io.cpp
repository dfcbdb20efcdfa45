#include "gnnpower/spec_io.hpp"

#include <fstream>
#include <set>

#include "gnnpower/comb_aggr.hpp"
#include "gnnpower/errors.hpp"

namespace gnnpower {

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalar strings");
  Vector out;
  for (const auto& item : j) {
    if (item.is_string()) {
      out.push_back(ExactScalar::parse(item.get<std::string>()));
    } else if (item.is_number_integer()) {
      out.emplace_back(item.get<long>());
    } else {
      throw ParseError("scalars must be strings or integers");
    }
  }
  return out;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of matrix rows");
  std::vector<Vector> rows;
  for (const auto& row : j) rows.push_back(vector_from_json(row));
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw ParseError("ragged matrix");
  }
  return Matrix::from_rows(rows);
}

namespace {

bool is_dgnn_family(const std::string& family) {
  return family == "gcn" || family == "dgnn" ||
         (family.size() == 5 && family.rfind("dgnn", 0) == 0 && family[4] >= '1' &&
          family[4] <= '6');
}

DgnnParams full_dgnn_params(const nlohmann::json& j) {
  DgnnParams d;
  if (j.contains("w1")) d.w1 = matrix_from_json(j.at("w1"));
  d.w2 = matrix_from_json(j.at("w2"));
  if (j.contains("bias")) d.bias = vector_from_json(j.at("bias"));
  d.p = ExactScalar::parse(j.value("p", std::string("0")));
  if (j.contains("g")) d.g = DegreeFunction::from_json(j.at("g"));
  if (j.contains("h")) d.h = DegreeFunction::from_json(j.at("h"));
  d.sigma = parse_activation(j.value("sigma", std::string("relu")));
  return d;
}

}  // namespace

LayerPtr layer_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "degree-probe") return std::make_shared<DegreeProbeLayer>();
  if (family == "lifted") return std::make_shared<LiftedLayer>(layer_from_json(j.at("inner")));
  if (family == "anonymized-dgnn") return std::make_shared<AnonymizedDgnnLayer>(full_dgnn_params(j));
  if (family == "comb-aggr") return CombAggrLayer::from_json(j);
  if (is_dgnn_family(family) && family != "dgnn" && j.contains("w2")) {
    return std::make_shared<DgnnLayer>(family, full_dgnn_params(j));
  }

  static const std::set<std::string> known = {"family", "w", "w1", "w2", "bias", "p",
                                              "q",      "r", "g",  "h",  "sigma"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ValidationError("unknown layer field '" + key + "'");
  }
  LayerParams params;
  if (j.contains("w")) params.w = matrix_from_json(j.at("w"));
  if (j.contains("w1")) params.w1 = matrix_from_json(j.at("w1"));
  if (j.contains("w2")) params.w2 = matrix_from_json(j.at("w2"));
  if (j.contains("bias")) params.bias = vector_from_json(j.at("bias"));
  if (j.contains("p")) params.p = ExactScalar::parse(j.at("p").get<std::string>());
  if (j.contains("q")) params.q = ExactScalar::parse(j.at("q").get<std::string>());
  if (j.contains("r")) {
    ExactScalar r = ExactScalar::parse(j.at("r").get<std::string>());
    if (!r.is_rational()) throw ValidationError("r must be rational");
    params.r = r.rational_value();
  }
  if (j.contains("g")) params.g = DegreeFunction::from_json(j.at("g"));
  if (j.contains("h")) params.h = DegreeFunction::from_json(j.at("h"));
  if (j.contains("sigma")) params.sigma = parse_activation(j.at("sigma").get<std::string>());
  return builtin_layer(family, params);
}

nlohmann::json spec_to_json(const MpnnSpec& spec) {
  nlohmann::json out;
  out["f_mode"] = spec.f_mode == FMode::Degree ? "degree" : "zero";
  out["layers"] = nlohmann::json::array();
  for (const auto& layer : spec.rounds) out["layers"].push_back(layer->to_json());
  return out;
}

MpnnSpec spec_from_json(const nlohmann::json& j) {
  MpnnSpec spec;
  for (const auto& layer : j.at("layers")) spec.rounds.push_back(layer_from_json(layer));
  if (j.contains("f_mode")) {
    const std::string mode = j.at("f_mode").get<std::string>();
    if (mode == "degree") {
      spec.f_mode = FMode::Degree;
    } else if (mode == "zero") {
      spec.f_mode = FMode::Zero;
    } else {
      throw ParseError("f_mode must be 'zero' or 'degree'");
    }
  } else {
    spec.f_mode = FMode::Zero;
    for (const auto& layer : spec.rounds) {
      if (layer->uses_degree()) spec.f_mode = FMode::Degree;
    }
  }
  return spec;
}

MpnnSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  try {
    return spec_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("spec file '" + path + "': " + e.what());
  }
}

bool is_named_spec(const std::string& name) {
  return name == "gcn" || name == "gnn" || name == "gnn-minus" ||
         (name.size() == 5 && name.rfind("dgnn", 0) == 0 && name[4] >= '1' && name[4] <= '6');
}

MpnnSpec named_spec(const std::string& name, std::size_t s0, std::size_t rounds) {
  if (!is_named_spec(name)) throw ValidationError("unknown spec name '" + name + "'");
  LayerParams params;
  const Matrix id = Matrix::identity(s0);
  if (name == "gnn") {
    params.w1 = id;
    params.w2 = id;
  } else if (name == "gnn-minus") {
    params.w = id;
    params.p = ExactScalar(Rational(1, 2));
    params.q = ExactScalar();
  } else {
    params.w = id;
    if (name == "dgnn6") {
      params.r = Rational(1, 2);
      params.p = ExactScalar(Rational(1, 2));
    }
  }
  LayerPtr layer = builtin_layer(name, params);
  MpnnSpec spec;
  spec.f_mode = layer->uses_degree() ? FMode::Degree : FMode::Zero;
  spec.rounds.assign(rounds, layer);
  return spec;
}

}  // namespace gnnpower
