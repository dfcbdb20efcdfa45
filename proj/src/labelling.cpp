#include "gnnpower/labelling.hpp"

#include <map>

#include "gnnpower/errors.hpp"

namespace gnnpower {

Partition partition_of(const Labelling& l) {
  std::map<Vector, std::size_t, StructuralLess> ids;
  Partition p;
  p.class_of.reserve(l.size());
  for (const auto& row : l.rows) {
    auto [it, inserted] = ids.try_emplace(row, ids.size());
    p.class_of.push_back(it->second);
  }
  p.num_classes = ids.size();
  return p;
}

Partition canonical_partition(const std::vector<std::size_t>& ids) {
  std::map<std::size_t, std::size_t> dense;
  Partition p;
  p.class_of.reserve(ids.size());
  for (auto id : ids) {
    auto [it, inserted] = dense.try_emplace(id, dense.size());
    p.class_of.push_back(it->second);
  }
  p.num_classes = dense.size();
  return p;
}

RefineResult refines(const Partition& fine, const Partition& coarse) {
  if (fine.size() != coarse.size()) {
    throw ValidationError("vertex-count mismatch: " + std::to_string(fine.size()) + " vs " +
                          std::to_string(coarse.size()));
  }
  // representative[c] = first vertex of fine class c
  std::vector<std::size_t> representative(fine.num_classes, fine.size());
  for (std::size_t v = 0; v < fine.size(); ++v) {
    std::size_t c = fine.class_of[v];
    if (representative[c] == fine.size()) {
      representative[c] = v;
    } else if (coarse.class_of[representative[c]] != coarse.class_of[v]) {
      return {false, std::make_pair(representative[c], v)};
    }
  }
  return {};
}

RefineResult refines(const Labelling& fine, const Labelling& coarse) {
  return refines(partition_of(fine), partition_of(coarse));
}

bool equivalent(const Partition& a, const Partition& b) {
  return refines(a, b).holds && refines(b, a).holds;
}

bool equivalent(const Labelling& a, const Labelling& b) {
  return equivalent(partition_of(a), partition_of(b));
}

}  // namespace gnnpower
