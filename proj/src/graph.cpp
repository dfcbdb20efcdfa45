#include "gnnpower/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "gnnpower/errors.hpp"

namespace gnnpower {

LabelledGraph::LabelledGraph(std::size_t n, std::vector<Edge> edges, std::vector<Vector> labels)
    : n_(n), labels_(std::move(labels)), adjacency_(n) {
  if (n == 0) throw ValidationError("graph has no vertices");
  if (labels_.size() != n) {
    throw ValidationError("expected " + std::to_string(n) + " labels, got " +
                          std::to_string(labels_.size()));
  }
  const std::size_t width = labels_.front().size();
  if (width == 0) throw ValidationError("labels must have width >= 1");
  for (std::size_t v = 0; v < n; ++v) {
    if (labels_[v].size() != width) {
      throw ValidationError("vertex " + std::to_string(v + 1) + " has label width " +
                            std::to_string(labels_[v].size()) + ", expected " +
                            std::to_string(width));
    }
  }
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) {
      throw ValidationError("edge endpoint out of range: " + std::to_string(a + 1) + "-" +
                            std::to_string(b + 1));
    }
    if (a == b) throw ValidationError("self-loop at vertex " + std::to_string(a + 1));
    Edge key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate edge " + std::to_string(a + 1) + "-" +
                            std::to_string(b + 1));
    }
    edges_.push_back(key);
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (adjacency_[v].empty()) {
      throw ValidationError("isolated vertex " + std::to_string(v + 1));
    }
    std::sort(adjacency_[v].begin(), adjacency_[v].end());
  }
}

const std::vector<std::size_t>& LabelledGraph::neighbours(std::size_t v) const {
  if (v >= n_) throw ValidationError("vertex " + std::to_string(v + 1) + " out of range");
  return adjacency_[v];
}

std::vector<std::size_t> LabelledGraph::degrees() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t v = 0; v < n_; ++v) out[v] = adjacency_[v].size();
  return out;
}

Matrix LabelledGraph::adjacency() const {
  Matrix a(n_, n_);
  for (auto [u, v] : edges_) {
    a(u, v) = ExactScalar(1L);
    a(v, u) = ExactScalar(1L);
  }
  return a;
}

LabelledGraph LabelledGraph::relabelled(std::vector<Vector> labels) const {
  return LabelledGraph(n_, edges_, std::move(labels));
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::size_t parse_index(const std::string& token, std::size_t line_no) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": expected integer, got '" + token + "'");
  }
  if (value < 0) throw ParseError("line " + std::to_string(line_no) + ": negative integer");
  return static_cast<std::size_t>(value);
}

}  // namespace

LabelledGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<std::optional<Vector>> labels;
  std::vector<LabelledGraph::Edge> edges;

  auto vertex = [&](const std::string& token) {
    std::size_t id = parse_index(token, line_no);
    if (id < 1 || id > *n) {
      throw ValidationError("line " + std::to_string(line_no) + ": vertex id " + token +
                            " out of range 1.." + std::to_string(*n));
    }
    return id - 1;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::istringstream tokens(body);
    std::string kind;
    tokens >> kind;
    if (kind != "n" && !n) {
      throw ParseError("line " + std::to_string(line_no) + ": 'n <count>' must come first");
    }
    if (kind == "n") {
      if (n) throw ParseError("line " + std::to_string(line_no) + ": duplicate 'n'");
      std::string count, extra;
      tokens >> count;
      if (tokens >> extra) throw ParseError("line " + std::to_string(line_no) + ": trailing input");
      n = parse_index(count, line_no);
      if (*n == 0) throw ValidationError("graph has no vertices");
      labels.assign(*n, std::nullopt);
    } else if (kind == "v") {
      auto colon = body.find(':');
      if (colon == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'v <id> <s0>: ...'");
      }
      std::istringstream head(body.substr(1, colon - 1));
      std::string id_token, width_token, extra;
      head >> id_token >> width_token;
      if (width_token.empty() || (head >> extra)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'v <id> <s0>:'");
      }
      std::size_t v = vertex(id_token);
      std::size_t width = parse_index(width_token, line_no);
      Vector row;
      std::string rest = body.substr(colon + 1);
      std::size_t start = 0;
      while (start <= rest.size()) {
        std::size_t comma = rest.find(',', start);
        std::string item = trim(rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start));
        row.push_back(ExactScalar::parse(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (row.size() != width) {
        throw ValidationError("line " + std::to_string(line_no) + ": declared width " +
                              width_token + " but found " + std::to_string(row.size()) +
                              " entries");
      }
      if (labels[v]) {
        throw ParseError("line " + std::to_string(line_no) + ": vertex " + id_token +
                         " labelled twice");
      }
      labels[v] = std::move(row);
    } else if (kind == "e") {
      std::string a, b, extra;
      tokens >> a >> b;
      if (b.empty() || (tokens >> extra)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'e <id> <id>'");
      }
      edges.emplace_back(vertex(a), vertex(b));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown directive '" + kind + "'");
    }
  }
  if (!n) throw ParseError("missing 'n <count>'");
  std::vector<Vector> rows;
  for (std::size_t v = 0; v < *n; ++v) {
    if (!labels[v]) throw ValidationError("vertex " + std::to_string(v + 1) + " has no label");
    rows.push_back(std::move(*labels[v]));
  }
  return LabelledGraph(*n, std::move(edges), std::move(rows));
}

std::string print_graph(const LabelledGraph& g) {
  std::ostringstream out;
  out << "n " << g.size() << "\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    const Vector& row = g.labels()[v];
    out << "v " << v + 1 << " " << row.size() << ":";
    for (std::size_t i = 0; i < row.size(); ++i) out << (i == 0 ? " " : ", ") << row[i].str();
    out << "\n";
  }
  for (auto [a, b] : g.edges()) out << "e " << a + 1 << " " << b + 1 << "\n";
  return out.str();
}

LabelledGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

}  // namespace gnnpower
