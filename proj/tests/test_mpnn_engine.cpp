#include <doctest.h>

#include "gnnpower/cases.hpp"
#include "gnnpower/compare.hpp"
#include "gnnpower/errors.hpp"
#include "gnnpower/mpnn.hpp"
#include "gnnpower/sampling.hpp"
#include "gnnpower/spec_io.hpp"
#include "gnnpower/transforms.hpp"
#include "gnnpower/wl.hpp"

using namespace gnnpower;

namespace {

ExactScalar S(const char* text) { return ExactScalar::parse(text); }

LayerParams identity_params(std::size_t width) {
  LayerParams params;
  params.w = Matrix::identity(width);
  return params;
}

Vector unit(std::size_t width, std::size_t i) {
  Vector v(width);
  v[i] = ExactScalar(1L);
  return v;
}

std::vector<std::string> row_strings(const Vector& row) {
  std::vector<std::string> out;
  for (const auto& x : row) out.push_back(x.str());
  return out;
}

}  // namespace

TEST_CASE("GCN on the fig1 graph reproduces the reference matrix") {
  RunTrace run = run_mpnn(builtin_graph("fig1"), named_spec("gcn", 3, 1));
  const std::vector<std::vector<std::string>> expected = {
      {"1/2", "1/4*sqrt(2)", "0"},
      {"1/2", "1/4*sqrt(2)", "0"},
      {"1/2*sqrt(2)", "1/4", "1/6*sqrt(3)"},
      {"0", "1/6*sqrt(3)", "2/3"},
      {"0", "1/6*sqrt(6)", "2/3"},
      {"0", "1/2", "1/6*sqrt(6)"},
  };
  for (std::size_t v = 0; v < 6; ++v) CHECK(row_strings(run.labellings[1].rows[v]) == expected[v]);
  // Reference forms 1/(2 sqrt 2), 1/(2 sqrt 3) and 1/sqrt 6.
  CHECK(run.labellings[1].rows[0][1] == ExactScalar(Rational(1, 2)) / ExactScalar::sqrt_of(2));
  CHECK(run.labellings[1].rows[4][1] == ExactScalar::sqrt_of(6).inverse());
}

TEST_CASE("identity GNN layer leaves non-negative labels unchanged") {
  LabelledGraph g = builtin_graph("g3");
  LayerPtr layer =
      std::make_shared<GnnLayer>(Matrix::identity(3), Matrix(3, 3), Vector(3), Activation::Relu);
  RunTrace run = run_mpnn(g, MpnnSpec{FMode::Zero, {layer, layer, layer}});
  for (const auto& l : run.labellings) CHECK(l.rows == g.labels());
}

TEST_CASE("dGNN2 merges v1 and v4 of G1") {
  RunTrace run = run_mpnn(builtin_graph("g1"), named_spec("dgnn2", 3, 2));
  CHECK(run.labellings[1].rows[0] == run.labellings[1].rows[3]);
}

TEST_CASE("closed-form coefficients of the built-in families") {
  const Vector zero(2);
  const Vector e0 = unit(2, 0);
  LayerParams params;
  params.w = Matrix::identity(2);
  LayerPtr gcn = builtin_layer("gcn", params);
  CHECK(gcn->message(zero, e0, 2, 2)[0] == ExactScalar(Rational(1, 3)));
  LayerPtr dgnn1 = builtin_layer("dgnn1", params);
  CHECK(dgnn1->message(zero, e0, 3, 1)[0] == ExactScalar(Rational(1, 3)));
  CHECK(dgnn1->message(zero, e0, 5, 2)[0] == ExactScalar(Rational(1, 5)));
  params.r = Rational(1);
  params.p = S("1/3");
  LayerPtr dgnn6 = builtin_layer("dgnn6", params);
  CHECK(dgnn6->message(zero, e0, 3, 2) == e0);
  // Self term p x is spread over the d_v messages.
  CHECK(dgnn6->message(e0, zero, 4, 2)[0] == ExactScalar(Rational(1, 12)));
}

TEST_CASE("builtin_layer parameter checks") {
  LayerParams params;
  CHECK_THROWS_AS(builtin_layer("gcn", params), ValidationError);
  params.w = Matrix::identity(2);
  params.q = S("1/2");
  CHECK_THROWS_AS(builtin_layer("gcn", params), ValidationError);
  params.q.reset();
  CHECK_THROWS_AS(builtin_layer("dgnn6", params), ValidationError);
  params.r = Rational(0);
  params.p = S("1/2");
  CHECK_THROWS_AS(builtin_layer("dgnn6", params), ValidationError);
  CHECK_THROWS_AS(builtin_layer("dgnn9", identity_params(2)), ValidationError);
  LayerParams minus;
  minus.w = Matrix::identity(2);
  minus.p = S("3/2");
  minus.q = S("0");
  CHECK_THROWS_AS(builtin_layer("gnn-minus", minus), ValidationError);
}

TEST_CASE("spec validation") {
  LabelledGraph g = builtin_graph("fig1");
  MpnnSpec wrong_mode = named_spec("gcn", 3, 1);
  wrong_mode.f_mode = FMode::Zero;
  CHECK_THROWS_AS(run_mpnn(g, wrong_mode), ValidationError);
  CHECK_THROWS_AS(run_mpnn(g, named_spec("gcn", 2, 1)), ValidationError);
}

TEST_CASE("degree probe appends degrees") {
  RunTrace fig1 = run_mpnn(builtin_graph("fig1"), degree_probe_spec());
  const std::vector<long> degrees = {1, 1, 3, 2, 2, 1};
  for (std::size_t v = 0; v < 6; ++v) {
    CHECK(fig1.labellings[1].rows[v].size() == 4);
    CHECK(fig1.labellings[1].rows[v].back() == ExactScalar(degrees[v]));
  }
  RunTrace g2 = run_mpnn(builtin_graph("g2"), degree_probe_spec());
  CHECK(g2.labellings[1].rows[0].back() == ExactScalar(1L));
  CHECK(g2.labellings[1].rows[1].back() == ExactScalar(1L));
  RunTrace g3 = run_mpnn(builtin_graph("g3"), degree_probe_spec());
  CHECK(g3.labellings[1].rows[0].back() == ExactScalar(4L));
}

TEST_CASE("lift_plus_one contract") {
  auto check = [](const LabelledGraph& g, const MpnnSpec& spec) {
    MpnnSpec lifted = lift_plus_one(spec);
    CHECK(lifted.f_mode == FMode::Zero);
    CHECK(lifted.size() == spec.size() + 1);
    RunTrace orig = run_mpnn(g, spec);
    RunTrace lift = run_mpnn(g, lifted);
    CHECK(weaker(orig.partitions, lift.partitions, ShiftSpec::plus_one()).holds);
  };
  check(builtin_graph("fig1"), named_spec("gcn", 3, 3));
  check(builtin_graph("g1"), named_spec("dgnn2", 3, 3));
  // Anonymous input: labels replayed next to an unused degree column.
  LabelledGraph g1 = builtin_graph("g1");
  MpnnSpec anon = named_spec("gnn-minus", 3, 2);
  check(g1, anon);
  RunTrace orig = run_mpnn(g1, anon);
  RunTrace lift = run_mpnn(g1, lift_plus_one(anon));
  for (std::size_t t = 0; t <= 2; ++t) CHECK(lift.partitions[t + 1] == orig.partitions[t]);
}

TEST_CASE("anonymize_h_const") {
  auto same = [](const LabelledGraph& g, const MpnnSpec& spec) {
    MpnnSpec anon = anonymize_h_const(spec);
    CHECK(anon.f_mode == FMode::Zero);
    RunTrace a = run_mpnn(g, spec), b = run_mpnn(g, anon);
    for (std::size_t t = 0; t <= spec.size(); ++t) CHECK(a.partitions[t] == b.partitions[t]);
  };
  same(builtin_graph("fig1"), named_spec("dgnn1", 3, 3));
  same(builtin_graph("g1"), named_spec("dgnn3", 3, 3));
  CHECK_THROWS_AS(anonymize_h_const(named_spec("dgnn4", 3, 1)), ValidationError);
}

TEST_CASE("comb-aggr wrapping") {
  LabelledGraph g = builtin_graph("fig1");
  MpnnSpec sum = wrap_comb_aggr(MessageMap{}, AggregateMap{}, Combiner{}, 1);
  RunTrace run = run_mpnn(g, sum);
  CHECK(run.labellings[1].matrix() == g.adjacency() * g.label_matrix());

  MessageMap zero;
  zero.kind = MessageMap::Kind::Zero;
  zero.width = 2;
  Combiner affine;
  affine.kind = Combiner::Kind::Affine;
  affine.w1 = Matrix::from_rows({{ExactScalar(1L)}, {ExactScalar(2L)}, {ExactScalar(3L)}});
  affine.w2 = Matrix::from_rows({{ExactScalar(5L)}, {ExactScalar(7L)}});
  affine.bias = Vector{ExactScalar(1L)};
  RunTrace constant = run_mpnn(g, wrap_comb_aggr(zero, AggregateMap{}, affine, 1));
  for (std::size_t v = 0; v < g.size(); ++v) {
    Vector expected = add(row_times(g.labels()[v], affine.w1), affine.bias);
    CHECK(constant.labellings[1].rows[v] == expected);
  }
}

TEST_CASE("spec JSON round trip preserves runs") {
  LabelledGraph g = builtin_graph("fig1");
  Rng rng(5);
  for (const std::string family : {"gcn", "dgnn1", "dgnn2", "dgnn3", "dgnn4", "dgnn5", "dgnn6"}) {
    MpnnSpec spec = random_degree_aware_spec(rng, family, 3, 2);
    MpnnSpec back = spec_from_json(nlohmann::json::parse(spec_to_json(spec).dump()));
    CHECK(run_mpnn(g, back).labellings.back().rows == run_mpnn(g, spec).labellings.back().rows);
  }
  for (const std::string family : {"gnn", "gnn-minus", "comb-aggr"}) {
    MpnnSpec spec = random_anonymous_spec(rng, family, 3, 2);
    MpnnSpec back = spec_from_json(nlohmann::json::parse(spec_to_json(spec).dump()));
    CHECK(back.f_mode == FMode::Zero);
    CHECK(run_mpnn(g, back).labellings.back().rows == run_mpnn(g, spec).labellings.back().rows);
  }
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"layers":[{"family":"gcn","w":[["1"]],"zz":1}]})")),
                  ValidationError);
}

TEST_CASE("sampled anonymous specs are bounded by WL, degree-aware ones one step ahead") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    LabelledGraph g = sample_graph(3 + seed, Rational(2, 5), seed);
    Rng rng(seed * 31);
    for (const std::string family : {"gnn", "gnn-minus", "comb-aggr"}) {
      MpnnSpec spec = random_anonymous_spec(rng, family, g.label_width(), 3);
      RunTrace run = run_mpnn(g, spec);
      CHECK(weaker(run.partitions, wl_rounds(g, 3).rounds).holds);
      ++checked;
    }
    for (const std::string family : {"gcn", "dgnn1", "dgnn2", "dgnn3", "dgnn4", "dgnn5", "dgnn6"}) {
      MpnnSpec spec = random_degree_aware_spec(rng, family, g.label_width(), 3);
      RunTrace run = run_mpnn(g, spec);
      CHECK(weaker(run.partitions, wl_rounds(g, 4).rounds, ShiftSpec::plus_one()).holds);
      RunTrace lift = run_mpnn(g, lift_plus_one(spec));
      CHECK(weaker(run.partitions, lift.partitions, ShiftSpec::plus_one()).holds);
      ++checked;
    }
  }
  CHECK(checked == 60);
}
