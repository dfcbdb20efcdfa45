#include "gnnpower/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gnnpower/comb_aggr.hpp"
#include "gnnpower/errors.hpp"

namespace gnnpower {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("empty sampling range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

long Rng::between(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::bernoulli(const Rational& p) {
  if (p < 0 || p > 1) throw ValidationError("probability out of [0, 1]");
  if (!p.get_den().fits_ulong_p()) throw ValidationError("probability denominator too large");
  const std::uint64_t den = p.get_den().get_ui();
  return below(den) < p.get_num().get_ui();
}

Rational Rng::rational(long max_num, long max_den) {
  const long num = between(-max_num, max_num);
  const long den = between(1, max_den);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

namespace {

bool connected(std::size_t n, const std::vector<LabelledGraph::Edge>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (const auto& [a, b] : edges) {
    std::size_t ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

LabelledGraph sample_graph(std::size_t n, const Rational& edge_prob, std::uint64_t seed,
                           const SampleOptions& options) {
  if (n < 2) throw ValidationError("sample_graph needs n >= 2");
  if (options.alphabet == 0) throw ValidationError("label alphabet must be nonempty");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<LabelledGraph::Edge> edges;
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng.bernoulli(edge_prob)) {
          edges.emplace_back(a, b);
          ++degree[a];
          ++degree[b];
        }
      }
    }
    bool ok = std::find(degree.begin(), degree.end(), 0) == degree.end();
    if (ok && options.connected) ok = connected(n, edges);
    if (!ok) continue;
    const std::size_t k = std::min(options.alphabet, n);
    std::vector<Vector> labels;
    for (std::size_t v = 0; v < n; ++v) {
      Vector row(k);
      row[rng.below(k)] = ExactScalar(1L);
      labels.push_back(std::move(row));
    }
    return LabelledGraph(n, std::move(edges), std::move(labels));
  }
  throw ValidationError("sample_graph found no admissible graph in 1000 attempts");
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long max_num, long max_den) {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = ExactScalar(rng.rational(max_num, max_den));
  }
  return out;
}

Vector random_vector(Rng& rng, std::size_t size, long max_num, long max_den) {
  Vector out(size);
  for (auto& x : out) x = ExactScalar(rng.rational(max_num, max_den));
  return out;
}

namespace {

constexpr long kNum = 3;
constexpr long kDen = 2;

Activation random_sigma(Rng& rng) {
  return rng.below(2) ? Activation::Relu : Activation::Sign;
}

ExactScalar random_unit(Rng& rng) {
  Rational r(rng.between(0, 4), 4);
  r.canonicalize();
  return ExactScalar(r);
}

}  // namespace

MpnnSpec random_anonymous_spec(Rng& rng, const std::string& family, std::size_t s0,
                               std::size_t rounds) {
  MpnnSpec spec;
  spec.f_mode = FMode::Zero;
  std::size_t width = s0;
  for (std::size_t t = 0; t < rounds; ++t) {
    const std::size_t out = static_cast<std::size_t>(rng.between(1, 4));
    if (family == "gnn") {
      spec.rounds.push_back(std::make_shared<GnnLayer>(
          random_matrix(rng, width, out, kNum, kDen), random_matrix(rng, width, out, kNum, kDen),
          random_vector(rng, out, kNum, kDen), random_sigma(rng)));
    } else if (family == "gnn-minus") {
      spec.rounds.push_back(std::make_shared<GnnMinusLayer>(
          random_matrix(rng, width, out, kNum, kDen), random_unit(rng), random_unit(rng),
          random_sigma(rng)));
    } else if (family == "comb-aggr") {
      MessageMap h;
      h.kind = rng.below(2) ? MessageMap::Kind::Activated : MessageMap::Kind::Linear;
      h.w = random_matrix(rng, width, out, kNum, kDen);
      h.sigma = random_sigma(rng);
      AggregateMap g;
      if (rng.below(2)) {
        g.kind = AggregateMap::Kind::Activated;
        g.w = random_matrix(rng, out, out, kNum, kDen);
        g.sigma = random_sigma(rng);
      }
      Combiner comb;
      comb.kind = Combiner::Kind::Affine;
      comb.w1 = random_matrix(rng, width, out, kNum, kDen);
      comb.w2 = random_matrix(rng, out, out, kNum, kDen);
      comb.bias = random_vector(rng, out, kNum, kDen);
      comb.sigma = random_sigma(rng);
      spec.rounds.push_back(std::make_shared<CombAggrLayer>(h, g, comb));
    } else {
      throw ValidationError("unknown anonymous family '" + family + "'");
    }
    width = out;
  }
  return spec;
}

MpnnSpec random_degree_aware_spec(Rng& rng, const std::string& family, std::size_t s0,
                                  std::size_t rounds) {
  MpnnSpec spec;
  spec.f_mode = FMode::Degree;
  std::size_t width = s0;
  for (std::size_t t = 0; t < rounds; ++t) {
    const std::size_t out = static_cast<std::size_t>(rng.between(1, 4));
    LayerParams params;
    params.w = random_matrix(rng, width, out, kNum, kDen);
    params.bias = random_vector(rng, out, kNum, kDen);
    params.sigma = random_sigma(rng);
    if (family == "dgnn6") {
      params.r = Rational(rng.between(1, 4), 4);
      params.r->canonicalize();
      params.p = random_unit(rng);
    }
    spec.rounds.push_back(builtin_layer(family, params));
    width = out;
  }
  return spec;
}

}  // namespace gnnpower
