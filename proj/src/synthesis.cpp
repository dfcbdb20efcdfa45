#include "gnnpower/synthesis.hpp"

#include <set>
#include <sstream>

#include "gnnpower/errors.hpp"
#include "gnnpower/spec_io.hpp"
#include "gnnpower/wl.hpp"

namespace gnnpower {

bool SynthesisCertificate::all_equivalent() const {
  for (const auto& r : per_round) {
    if (!r.equivalent_to_wl) return false;
  }
  return true;
}

bool SynthesisCertificate::all_refine() const {
  for (const auto& r : per_round) {
    if (!r.refines_wl) return false;
  }
  return true;
}

bool SynthesisCertificate::all_independent() const {
  for (const auto& r : per_round) {
    if (!r.row_independent) return false;
  }
  return true;
}

bool row_independent_mod_equality(const Labelling& l) {
  Matrix uniq = unique_rows(l.matrix());
  return rank(uniq) == uniq.rows();
}

LabelledGraph one_hot_classes(const LabelledGraph& g) {
  Partition p = partition_of(Labelling{g.labels()});
  std::vector<Vector> labels;
  labels.reserve(g.size());
  for (auto c : p.class_of) {
    Vector row(p.num_classes);
    row[c] = ExactScalar(1L);
    labels.push_back(std::move(row));
  }
  return g.relabelled(std::move(labels));
}

ExactScalar uniform_threshold(std::size_t n) {
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), n + 1, n + 1);
  return ExactScalar(Rational(1) - Rational(BigInt(1), power));
}

namespace {

Matrix diagonal(const Vector& d) {
  Matrix out(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

std::string dump_rounds(const std::vector<Labelling>& labels, const WlTrace& wl) {
  std::ostringstream out;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    out << "round " << t << ":";
    for (const auto& row : labels[t].rows) out << " " << to_string(row);
    if (t < wl.rounds.size()) {
      out << " | wl classes";
      for (auto c : wl.rounds[t].class_of) out << " " << c;
    }
    out << "\n";
  }
  return out.str();
}

struct Plan {
  bool degree_scaled = false;
  Vector g_diag;  // per vertex; ones when not degree scaled
  Vector h_diag;
  ExactScalar p;
  Activation sigma = Activation::Relu;
  std::optional<ExactScalar> q_fixed;
};

// Runs the inductive construction; fills per_round (except verdicts), the
// spec, and returns the labels computed along the way.
std::vector<Labelling> construct(const LabelledGraph& g, std::size_t rounds, const Plan& plan,
                                 SynthesisCertificate& cert) {
  const std::size_t n = g.size();
  const Matrix a_plus_p = g.adjacency() + scale(plan.p, Matrix::identity(n));
  const Matrix g_diag = diagonal(plan.g_diag);
  const Matrix h_diag = diagonal(plan.h_diag);

  std::vector<Labelling> labels{Labelling{g.labels()}};
  for (std::size_t t = 1; t <= rounds; ++t) {
    const Matrix l = labels.back().matrix();
    const Matrix kappa = plan.degree_scaled ? h_diag * l : l;
    SynthesisRound round;
    if (plan.degree_scaled && !row_independent_mod_equality(Labelling{kappa.to_rows()})) {
      round.kappa_independent = false;
      round.u = right_inverse(l);
    } else {
      round.u = right_inverse(kappa);
    }
    Matrix mu = a_plus_p * kappa * round.u;
    if (plan.degree_scaled) mu = g_diag * mu;

    SeparationResult sep = separate(unique_rows(mu), plan.sigma, plan.q_fixed);
    round.x = sep.x;
    round.w = round.u * sep.x;
    round.q = sep.q;
    round.q_max = sep.q_max;
    round.base = sep.base;
    round.permutation = sep.permutation;

    Matrix next = mu * sep.x;
    Labelling out;
    for (std::size_t v = 0; v < n; ++v) {
      Vector row = next.row(v);
      for (auto& value : row) value = activate(value - sep.q, plan.sigma);
      out.rows.push_back(std::move(row));
    }
    labels.push_back(std::move(out));

    Vector bias(round.w.cols(), -sep.q);
    if (plan.degree_scaled) {
      DgnnParams params;
      params.w2 = round.w;
      params.bias = bias;
      params.p = plan.p;
      params.g = *cert.g;
      params.h = *cert.h;
      params.sigma = plan.sigma;
      cert.spec.rounds.push_back(std::make_shared<DgnnLayer>("dgnn", std::move(params)));
    } else {
      cert.spec.rounds.push_back(
          std::make_shared<GnnMinusLayer>(round.w, plan.p, sep.q, plan.sigma));
    }
    cert.per_round.push_back(std::move(round));
  }
  return labels;
}

// Re-runs the emitted spec and fills the per-round verdicts.
void verify(const LabelledGraph& g, const std::vector<Labelling>& constructed,
            SynthesisCertificate& cert, bool require_equivalence) {
  const WlTrace wl = wl_rounds(g, cert.rounds);
  const RunTrace run = run_mpnn(g, cert.spec);
  for (std::size_t t = 1; t <= cert.rounds; ++t) {
    if (!(run.labellings[t].rows == constructed[t].rows)) {
      throw VerificationFailure("round " + std::to_string(t) +
                                ": emitted network disagrees with the construction\n" +
                                dump_rounds(run.labellings, wl));
    }
    SynthesisRound& r = cert.per_round[t - 1];
    r.classes = run.partitions[t].num_classes;
    r.wl_classes = wl.rounds[t].num_classes;
    r.refines_wl = refines(run.partitions[t], wl.rounds[t]).holds;
    r.equivalent_to_wl = equivalent(run.partitions[t], wl.rounds[t]);
    r.row_independent = row_independent_mod_equality(run.labellings[t]);
    bool ok = r.refines_wl && r.row_independent && (!require_equivalence || r.equivalent_to_wl);
    if (!ok) {
      throw VerificationFailure("round " + std::to_string(t) + " of " + cert.target +
                                " synthesis failed (refines " + std::to_string(r.refines_wl) +
                                ", equivalent " + std::to_string(r.equivalent_to_wl) +
                                ", independent " + std::to_string(r.row_independent) + ")\n" +
                                dump_rounds(run.labellings, wl));
    }
  }
}

LabelledGraph prepare(const LabelledGraph& g, SynthesisCertificate& cert) {
  if (row_independent_mod_equality(Labelling{g.labels()})) return g;
  cert.re_encoded = true;
  return one_hot_classes(g);
}

}  // namespace

SynthesisCertificate synthesize_gnn_minus(const LabelledGraph& g, std::size_t rounds,
                                          const SynthesisOptions& options) {
  if (options.sigma == Activation::None) throw ValidationError("sigma must be sign or relu");
  const ExactScalar p = options.p.value_or(ExactScalar(Rational(1, 2)));
  if (p.sign() <= 0 || compare(p, 1L) >= 0) {
    throw ValidationError("p must lie in (0, 1), got " + p.str());
  }
  SynthesisCertificate cert;
  cert.target = "gnn-minus";
  cert.rounds = rounds;
  cert.sigma = options.sigma;
  cert.p = p;
  cert.spec.f_mode = FMode::Zero;
  const LabelledGraph g0 = prepare(g, cert);
  cert.initial_labels = g0.labels();

  Plan plan;
  plan.p = p;
  plan.sigma = options.sigma;
  if (options.uniform_q) {
    cert.uniform_q = uniform_threshold(g.size());
    plan.q_fixed = cert.uniform_q;
  }
  std::vector<Labelling> labels = construct(g0, rounds, plan, cert);
  verify(g0, labels, cert, true);
  return cert;
}

ExactScalar compute_mp(const LabelledGraph& g, const DegreeFunction& gfn) {
  std::set<std::size_t> degrees;
  for (auto d : g.degrees()) degrees.insert(d);
  std::vector<ExactScalar> values;
  for (auto d : degrees) {
    ExactScalar value = gfn(d);
    if (value.sign() <= 0) {
      throw ValidationError("g must be positive, got " + value.str() + " at degree " +
                            std::to_string(d));
    }
    values.push_back(value);
  }
  std::set<ExactScalar, StructuralLess> gamma;
  for (const auto& gv : values) {
    for (const auto& gw : values) {
      if (!(gv == gw)) gamma.insert(gw / gv);
    }
  }

  const long n = static_cast<long>(g.size());
  const ExactScalar one(1L);
  ExactScalar best;  // 0 is always a member
  auto consider = [&](const ExactScalar& value) {
    if (value.sign() >= 0 && compare(value, one) < 0 && compare(value, best) > 0) best = value;
  };
  for (const auto& alpha : gamma) {
    const ExactScalar inv_alpha = alpha.inverse();
    const ExactScalar inv_one_minus = (one - alpha).inverse();
    for (long i = 0; i <= n; ++i) {
      for (long j = 0; j <= n; ++j) {
        const ExactScalar aj_minus_i = alpha * ExactScalar(j) - ExactScalar(i);
        consider(aj_minus_i);                // P_a
        consider(-aj_minus_i * inv_alpha);   // P_b
        consider(aj_minus_i * inv_one_minus);  // P_c
      }
    }
  }
  return best;
}

SynthesisCertificate synthesize_dgnn6(const LabelledGraph& g, std::size_t rounds,
                                      Activation sigma, const DegreeFunction& gfn,
                                      const DegreeFunction& hfn, bool uniform_q) {
  if (sigma == Activation::None) throw ValidationError("sigma must be sign or relu");
  SynthesisCertificate cert;
  cert.target = "dgnn6";
  cert.rounds = rounds;
  cert.sigma = sigma;
  cert.g = gfn;
  cert.h = hfn;
  cert.m_p = compute_mp(g, gfn);
  cert.p = (*cert.m_p + ExactScalar(1L)) * ExactScalar(Rational(1, 2));
  if (!(compare(*cert.m_p, cert.p) < 0 && compare(cert.p, 1L) < 0)) {
    throw VerificationFailure("p = " + cert.p.str() + " is not in (m_p, 1)");
  }
  cert.spec.f_mode = FMode::Degree;
  const LabelledGraph g0 = prepare(g, cert);
  cert.initial_labels = g0.labels();

  Plan plan;
  plan.degree_scaled = true;
  plan.p = cert.p;
  plan.sigma = sigma;
  for (auto d : g0.degrees()) {
    plan.g_diag.push_back(gfn(d));
    plan.h_diag.push_back(hfn(d));
    if (plan.g_diag.back().sign() <= 0 || plan.h_diag.back().sign() <= 0) {
      throw ValidationError("g and h must be positive on every degree");
    }
  }
  if (uniform_q) {
    cert.uniform_q = uniform_threshold(g.size());
    plan.q_fixed = cert.uniform_q;
  }
  std::vector<Labelling> labels = construct(g0, rounds, plan, cert);
  verify(g0, labels, cert, false);
  return cert;
}

nlohmann::json certificate_json(const SynthesisCertificate& cert) {
  nlohmann::json out;
  out["target"] = cert.target;
  out["rounds"] = cert.rounds;
  out["sigma"] = to_string(cert.sigma);
  out["p"] = cert.p.str();
  out["m_p"] = cert.m_p ? nlohmann::json(cert.m_p->str()) : nlohmann::json();
  out["uniform_q"] = cert.uniform_q ? nlohmann::json(cert.uniform_q->str()) : nlohmann::json();
  if (cert.g) out["g"] = cert.g->to_json();
  if (cert.h) out["h"] = cert.h->to_json();
  out["re_encoded"] = cert.re_encoded;
  nlohmann::json initial = nlohmann::json::array();
  for (const auto& row : cert.initial_labels) initial.push_back(vector_to_json(row));
  out["initial_labels"] = initial;
  nlohmann::json rounds = nlohmann::json::array();
  for (std::size_t t = 0; t < cert.per_round.size(); ++t) {
    const SynthesisRound& r = cert.per_round[t];
    nlohmann::json round;
    round["round"] = t + 1;
    round["W"] = matrix_to_json(r.w);
    round["q"] = r.q.str();
    round["q_max"] = r.q_max ? nlohmann::json(r.q_max->str()) : nlohmann::json();
    round["base"] = r.base;
    round["permutation"] = r.permutation;
    round["classes"] = r.classes;
    round["wl_classes"] = r.wl_classes;
    round["equivalent_to_wl"] = r.equivalent_to_wl;
    round["refines_wl"] = r.refines_wl;
    round["row_independent"] = r.row_independent;
    if (cert.target == "dgnn6") round["kappa_independent"] = r.kappa_independent;
    rounds.push_back(round);
  }
  out["per_round"] = rounds;
  out["spec"] = spec_to_json(cert.spec);
  return out;
}

}  // namespace gnnpower
