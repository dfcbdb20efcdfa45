#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "gnnpower/graph.hpp"
#include "gnnpower/mpnn.hpp"

namespace gnnpower {

/// Seeded mt19937_64 with platform-independent bounded draws (the standard
/// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  long between(long lo, long hi);
  /// True with probability p, 0 <= p <= 1.
  bool bernoulli(const Rational& p);
  /// Rational with numerator in [-max_num, max_num] and denominator in 1..max_den.
  Rational rational(long max_num, long max_den);

 private:
  std::mt19937_64 engine_;
};

struct SampleOptions {
  bool connected = false;
  /// Labels are one-hot over this many symbols (capped at n).
  std::size_t alphabet = 3;
};

/// Erdos-Renyi draw resampled until no vertex is isolated (and, when asked,
/// the graph is connected). Throws ValidationError after 1000 attempts or
/// for n < 2.
LabelledGraph sample_graph(std::size_t n, const Rational& edge_prob, std::uint64_t seed,
                           const SampleOptions& options = {});

/// Random matrix with entries drawn by Rng::rational(max_num, max_den).
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long max_num, long max_den);
Vector random_vector(Rng& rng, std::size_t size, long max_num, long max_den);

/// Random anonymous spec of the given family (gnn, gnn-minus or comb-aggr)
/// on s0-wide labels.
MpnnSpec random_anonymous_spec(Rng& rng, const std::string& family, std::size_t s0,
                               std::size_t rounds);

/// Random degree-aware spec of the given family (gcn, dgnn1..dgnn6).
MpnnSpec random_degree_aware_spec(Rng& rng, const std::string& family, std::size_t s0,
                                  std::size_t rounds);

}  // namespace gnnpower
