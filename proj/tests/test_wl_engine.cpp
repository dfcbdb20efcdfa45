#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gnnpower/cases.hpp"
#include "gnnpower/errors.hpp"
#include "gnnpower/injection.hpp"
#include "gnnpower/mpnn.hpp"
#include "gnnpower/sampling.hpp"
#include "gnnpower/transforms.hpp"
#include "gnnpower/wl.hpp"

using namespace gnnpower;

namespace {

// Brute-force colour refinement: a class is the set of vertices with the same
// (previous class, sorted neighbour classes) signature, compared pairwise.
std::vector<std::size_t> oracle_step(const LabelledGraph& g, const std::vector<std::size_t>& c) {
  const std::size_t n = g.size();
  auto signature = [&](std::size_t v) {
    std::vector<std::size_t> nb;
    for (auto u : g.neighbours(v)) nb.push_back(c[u]);
    std::sort(nb.begin(), nb.end());
    return std::make_pair(c[v], nb);
  };
  std::vector<std::size_t> out(n);
  std::vector<std::size_t> reps;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t k = 0;
    while (k < reps.size() && signature(reps[k]) != signature(v)) ++k;
    if (k == reps.size()) reps.push_back(v);
    out[v] = k;
  }
  return out;
}

}  // namespace

TEST_CASE("wl_step on the fig1 graph") {
  LabelledGraph g = builtin_graph("fig1");
  Partition p0 = partition_of(Labelling{g.labels()});
  CHECK(p0.class_of == std::vector<std::size_t>{0, 0, 1, 2, 2, 1});
  Partition p1 = wl_step(g, p0);
  CHECK(p1.class_of == std::vector<std::size_t>{0, 0, 1, 2, 2, 3});
  Partition p2 = wl_step(g, p1);
  CHECK(p2.class_of[3] != p2.class_of[4]);
  Partition discrete = canonical_partition({0, 1, 2, 3, 4, 5});
  CHECK(wl_step(g, discrete) == discrete);
}

TEST_CASE("wl_run termination on the built-in graphs") {
  WlTrace g2 = wl_run(builtin_graph("g2"));
  REQUIRE(g2.stabilized_at);
  CHECK(*g2.stabilized_at == 1);
  CHECK(g2.rounds.back().num_classes == 2);
  WlTrace g1 = wl_run(builtin_graph("g1"));
  CHECK(g1.rounds[1].class_of[0] != g1.rounds[1].class_of[3]);
  CHECK(wl_trace_json(wl_rounds(builtin_graph("g2"), 1)) ==
        R"({"rounds":[[0,1],[0,1]],"stabilized_at":1})");
}

TEST_CASE("wl_step matches the brute-force oracle and refines monotonically") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 2 + seed % 9;
    LabelledGraph g = sample_graph(n, Rational(1, 3), seed, {false, 2});
    WlTrace trace = wl_run(g);
    std::vector<std::size_t> c = trace.rounds[0].class_of;
    for (std::size_t t = 1; t < trace.rounds.size(); ++t) {
      c = oracle_step(g, c);
      CHECK(trace.rounds[t].class_of == c);
      CHECK(refines(trace.rounds[t], trace.rounds[t - 1]).holds);
      CHECK(trace.rounds[t].num_classes >= trace.rounds[t - 1].num_classes);
    }
    REQUIRE(trace.stabilized_at);
    CHECK(*trace.stabilized_at <= n);
    const std::size_t s = *trace.stabilized_at;
    CHECK(trace.rounds[s].num_classes == trace.rounds[s - 1].num_classes);
  }
}

TEST_CASE("alpha_encode") {
  CHECK(alpha_encode(0, 0, 0, 0, {}) == 1);
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(2) == 3);
  CHECK(nth_prime(8) == 19);
  // pi_2^1 pi_4^0 pi_6^1 pi_8^1
  CHECK(alpha_encode(1, 0, 1, 1, {}) == 3 * 13 * 19);
  CHECK(alpha_encode(AlgebraicRep{{}, Rational(1), Rational(0)}) == 741);
  // Rational 0 is [0, 0] with unit denominators.
  CHECK(alpha_encode(represent(Rational(0))) == 13 * 19);
  // Negative exponents use the odd-indexed prime: p(1, -1) = pi_3 = 5.
  CHECK(alpha_encode(-1, 0, 0, 0, {}) == 5);
  CHECK(alpha_encode(0, 0, 0, 0, {2}) == 29 * 29);  // p(5, 2) = pi_10^2
}

TEST_CASE("alpha_encode is injective on a micro domain") {
  // Canonical polynomials have no trailing zero coefficient.
  std::vector<std::vector<BigInt>> polys = {{}};
  for (long a : {-1L, 0L, 1L}) {
    if (a != 0) polys.push_back({a});
    for (long b : {-1L, 1L}) polys.push_back({a, b});
  }
  std::set<BigInt> seen;
  std::size_t count = 0;
  for (const auto& poly : polys) {
    for (long n1 : {-1L, 0L, 1L}) {
      for (long n2 : {-1L, 0L, 1L, 2L}) {
        seen.insert(alpha_encode(AlgebraicRep{poly, Rational(n1), Rational(n2, 3)}));
        ++count;
      }
    }
  }
  CHECK(count == 9 * 12);
  CHECK(seen.size() == count);
}

TEST_CASE("h_inject and phi_sum") {
  CHECK(h_inject(1, 3) == Rational(1, 4));
  CHECK(h_inject(2, 3) == Rational(1, 16));
  CHECK(phi_sum(std::vector<std::uint64_t>{}, 5) == 0);
  CHECK(phi_sum(std::vector<std::uint64_t>{2}, 5) == h_inject(2, 5));
  CHECK(phi_sum(std::vector<std::uint64_t>{1, 1, 2}, 5) == Rational(13, 36));
  CHECK_THROWS_AS(phi_sum(std::vector<std::uint64_t>{1, 1, 1}, 2), ArithmeticError);
}

TEST_CASE("phi_inverse") {
  CHECK(phi_inverse(Rational(0), 5, std::vector<std::uint64_t>{1, 2}) ==
        std::vector<std::size_t>{0, 0});
  CHECK(phi_inverse(Rational(13, 36), 5, std::vector<std::uint64_t>{1, 2}) ==
        std::vector<std::size_t>{2, 1});
  CHECK_THROWS_AS(phi_inverse(Rational(1, 2), 5, std::vector<std::uint64_t>{2}), ArithmeticError);
  CHECK_THROWS_AS(phi_inverse(Rational(1, 7), 5, std::vector<std::uint64_t>{1, 2}),
                  ArithmeticError);
}

TEST_CASE("h_inject separates distinct micro labels") {
  std::set<Rational> seen;
  std::size_t count = 0;
  for (long a = -2; a <= 2; ++a) {
    seen.insert(h_inject(Vector{ExactScalar(a)}, 4));
    ++count;
  }
  CHECK(seen.size() == count);
}

TEST_CASE("phi round trip over all multisets of size at most 5") {
  const std::vector<std::uint64_t> dictionary = {tau(Vector{ExactScalar(0L)}),
                                                 tau(Vector{ExactScalar(1L)}),
                                                 tau(Vector{ExactScalar(-1L)})};
  std::size_t multisets = 0;
  for (std::size_t a = 0; a <= 5; ++a) {
    for (std::size_t b = 0; a + b <= 5; ++b) {
      for (std::size_t c = 0; a + b + c <= 5; ++c) {
        std::vector<std::uint64_t> bag;
        bag.insert(bag.end(), a, dictionary[0]);
        bag.insert(bag.end(), b, dictionary[1]);
        bag.insert(bag.end(), c, dictionary[2]);
        CHECK(phi_inverse(phi_sum(bag, 5), 5, dictionary) == std::vector<std::size_t>{a, b, c});
        ++multisets;
      }
    }
  }
  CHECK(multisets == 56);
}

TEST_CASE("injection-encoded WL matches dictionary WL on micro graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 2 + seed % 4;
    LabelledGraph g = sample_graph(n, Rational(1, 2), seed, {false, 2});
    LabelledGraph encoded = encode_labels_for_injection(g);
    const std::size_t rounds = 3;
    RunTrace run = run_mpnn(encoded, wl_as_mpnn(n, rounds));
    WlTrace wl = wl_rounds(g, rounds);
    for (std::size_t t = 0; t <= rounds; ++t) CHECK(run.partitions[t] == wl.rounds[t]);
  }
}
