#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gnnpower/matrix.hpp"

namespace gnnpower {

/// Undirected simple graph with per-vertex label vectors.
///
/// Vertices are 0-based internally and 1-based in every text format.
/// Invariants (checked on construction): no self-loops, no parallel edges,
/// no isolated vertices, all labels share one width >= 1.
class LabelledGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  LabelledGraph(std::size_t n, std::vector<Edge> edges, std::vector<Vector> labels);

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vector>& labels() const { return labels_; }
  std::size_t label_width() const { return labels_.front().size(); }

  const std::vector<std::size_t>& neighbours(std::size_t v) const;
  std::size_t degree(std::size_t v) const { return neighbours(v).size(); }
  std::vector<std::size_t> degrees() const;

  Matrix adjacency() const;
  Matrix label_matrix() const { return Matrix::from_rows(labels_); }

  /// Same topology, new labels.
  LabelledGraph relabelled(std::vector<Vector> labels) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<Vector> labels_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

LabelledGraph parse_graph(std::string_view text);
std::string print_graph(const LabelledGraph& g);
LabelledGraph load_graph_file(const std::string& path);

}  // namespace gnnpower
