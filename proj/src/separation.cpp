#include "gnnpower/separation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gnnpower/errors.hpp"

namespace gnnpower {

Matrix right_inverse(const Matrix& l) {
  Matrix uniq = unique_rows(l);
  const std::size_t m = uniq.rows();
  const std::size_t s = uniq.cols();
  Matrix reduced = uniq;
  std::vector<std::size_t> pivots = row_reduce(reduced);
  if (pivots.size() != m) {
    throw ValidationError("unique label rows are linearly dependent (rank " +
                          std::to_string(pivots.size()) + " < " + std::to_string(m) + ")");
  }
  // Invert the m x m submatrix on the pivot columns by Gauss-Jordan on [S | I].
  Matrix aug(m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) aug(i, k) = uniq(i, pivots[k]);
    aug(i, m + i) = ExactScalar(1L);
  }
  row_reduce(aug);
  Matrix u(s, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) u(pivots[k], j) = aug(k, m + j);
  }
  return u;
}

BigInt floor_of(const ExactScalar& x) {
  if (x.is_rational()) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), x.rational_value().get_num_mpz_t(),
               x.rational_value().get_den_mpz_t());
    return out;
  }
  BigInt k(std::floor(x.approx()));
  while (compare(x, ExactScalar(Rational(k))) < 0) k -= 1;
  while (compare(x, ExactScalar(Rational(k + 1))) >= 0) k += 1;
  return k;
}

namespace {

void check_input(const Matrix& c) {
  if (c.rows() == 0 || c.cols() == 0) throw ValidationError("separation needs a nonempty matrix");
  std::set<Vector, StructuralLess> seen;
  for (std::size_t i = 0; i < c.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < c.cols(); ++j) {
      int s = c(i, j).sign();
      if (s < 0) throw ValidationError("separation needs non-negative entries");
      nonzero = nonzero || s > 0;
    }
    if (!nonzero) throw ValidationError("separation needs nonzero rows");
    if (!seen.insert(c.row(i)).second) {
      throw ValidationError("separation needs pairwise distinct rows");
    }
  }
}

SeparationResult build(const Matrix& c, Activation sigma,
                       const std::optional<ExactScalar>& q_override) {
  check_input(c);
  const std::size_t m = c.rows();
  const std::size_t w = c.cols();

  ExactScalar cmax = c(0, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      if (compare(c(i, j), cmax) > 0) cmax = c(i, j);
    }
  }

  // Smallest integer above the maximal entry, then escalate until c = C z is injective.
  BigInt base_big = floor_of(cmax) + 1;
  Vector z;
  Vector cz;
  for (;; base_big += 1) {
    z.assign(w, ExactScalar());
    ExactScalar power(1L);
    for (std::size_t k = 0; k < w; ++k) {
      z[k] = power;
      power *= ExactScalar(Rational(base_big));
    }
    cz.assign(m, ExactScalar());
    std::set<ExactScalar, StructuralLess> distinct;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < w; ++k) cz[i] += c(i, k) * z[k];
      distinct.insert(cz[i]);
    }
    if (distinct.size() == m) break;
  }

  SeparationResult out;
  out.base = base_big.get_ui();
  out.permutation.resize(m);
  std::iota(out.permutation.begin(), out.permutation.end(), 0);
  std::stable_sort(out.permutation.begin(), out.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return compare(cz[a], cz[b]) > 0; });

  Vector sorted(m);
  Vector inv(m);
  for (std::size_t i = 0; i < m; ++i) {
    sorted[i] = cz[out.permutation[i]];
    inv[i] = sorted[i].inverse();
  }
  // E_ij = c'_i / c'_j is below 1 exactly when i > j.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      ExactScalar e = sorted[i] * inv[j];
      if (!out.q_max || compare(e, *out.q_max) > 0) out.q_max = e;
    }
  }

  const ExactScalar floor_q = out.q_max.value_or(ExactScalar());
  if (q_override) {
    bool above = out.q_max ? compare(*q_override, floor_q) > 0 : q_override->sign() >= 0;
    if (!above || compare(*q_override, 1L) >= 0) {
      throw ValidationError("threshold " + q_override->str() + " is not in (" + floor_q.str() +
                            ", 1)");
    }
    out.q = *q_override;
  } else if (sigma == Activation::Sign) {
    out.q = out.q_max ? (floor_q + ExactScalar(1L)) * ExactScalar(Rational(1, 2))
                      : ExactScalar(Rational(1, 2));
  } else {
    out.q = floor_q;
  }

  out.x = Matrix(w, m);
  for (std::size_t k = 0; k < w; ++k) {
    for (std::size_t j = 0; j < m; ++j) out.x(k, j) = z[k] * inv[j];
  }
  out.activated = c * out.x;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.activated(i, j) = activate(out.activated(i, j) - out.q, sigma);
    }
  }
  out.determinant = determinant(out.activated);
  if (out.determinant.is_zero()) {
    throw VerificationFailure("activated separation matrix is singular");
  }
  return out;
}

}  // namespace

SeparationResult relu_separation(const Matrix& c, const std::optional<ExactScalar>& q_override) {
  return build(c, Activation::Relu, q_override);
}

SeparationResult sign_separation(const Matrix& c, const std::optional<ExactScalar>& q_override) {
  return build(c, Activation::Sign, q_override);
}

SeparationResult separate(const Matrix& c, Activation sigma,
                          const std::optional<ExactScalar>& q_override) {
  if (sigma == Activation::None) throw ValidationError("separation needs sign or relu");
  return build(c, sigma, q_override);
}

}  // namespace gnnpower
