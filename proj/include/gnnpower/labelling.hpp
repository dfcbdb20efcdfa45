#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gnnpower/matrix.hpp"

namespace gnnpower {

/// A vertex labelling; rows[v] is the label of vertex v (0-based).
struct Labelling {
  std::vector<Vector> rows;

  std::size_t size() const { return rows.size(); }
  std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
  Matrix matrix() const { return Matrix::from_rows(rows); }
};

/// Canonical quotient of a labelling: dense class ids in first-occurrence order.
struct Partition {
  std::vector<std::size_t> class_of;
  std::size_t num_classes = 0;

  std::size_t size() const { return class_of.size(); }
  friend bool operator==(const Partition& a, const Partition& b) {
    return a.class_of == b.class_of;
  }
};

Partition partition_of(const Labelling& l);

/// Renumbers arbitrary class ids densely in first-occurrence order.
Partition canonical_partition(const std::vector<std::size_t>& ids);

struct RefineResult {
  bool holds = true;
  /// 0-based vertices (v, w) equal in `fine` but distinct in `coarse`.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Whether `coarse` is coarser than `fine`: fine_v = fine_w implies coarse_v = coarse_w.
RefineResult refines(const Partition& fine, const Partition& coarse);
RefineResult refines(const Labelling& fine, const Labelling& coarse);

bool equivalent(const Partition& a, const Partition& b);
bool equivalent(const Labelling& a, const Labelling& b);

}  // namespace gnnpower
