#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "gnnpower/mpnn.hpp"

namespace gnnpower {

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
/// Array of rows, each an array of scalar strings.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

LayerPtr layer_from_json(const nlohmann::json& j);

/// {"f_mode": "zero"|"degree", "layers": [...]}
nlohmann::json spec_to_json(const MpnnSpec& spec);
MpnnSpec spec_from_json(const nlohmann::json& j);
MpnnSpec load_spec_file(const std::string& path);

/// Named specs with identity weights and ReLU: gcn, dgnn1..dgnn6 (r = p = 1/2),
/// gnn, gnn-minus (p = 1/2, q = 0). Every round maps width s0 to s0.
bool is_named_spec(const std::string& name);
MpnnSpec named_spec(const std::string& name, std::size_t s0, std::size_t rounds);

}  // namespace gnnpower
