#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gnnpower/matrix.hpp"

namespace gnnpower {

/// An algebraic number given by an integer polynomial a_0 + a_1 x + ... and an
/// isolating interval [n1/d1, n2/d2].
struct AlgebraicRep {
  std::vector<BigInt> poly;
  Rational lower;
  Rational upper;
};

/// A rational v is represented by the empty polynomial and the interval [v, v].
AlgebraicRep represent(const Rational& v);

/// prod p(i, z_i) over (n1, n2, d1, d2, a_0, a_1, ...) at i = 1, 2, 3, 4, 5, ...
/// with p(i, z) = prime(2i)^z for z >= 0 and prime(2i+1)^(-z) otherwise.
BigInt alpha_encode(const AlgebraicRep& x);
/// The same product on raw integers (n1, n2, d1, d2, polynomial coefficients).
BigInt alpha_encode(const BigInt& n1, const BigInt& n2, const BigInt& d1, const BigInt& d2,
                    const std::vector<BigInt>& poly);

/// The i-th prime, 1-based: nth_prime(1) = 2.
std::uint64_t nth_prime(std::size_t i);

/// Cantor pairing folded left; a 1-tuple maps to itself.
BigInt cantor_tuple(const std::vector<BigInt>& values);

inline constexpr std::uint64_t kMaxTau = 1'000'000;

/// Cantor tuple of the pointwise alpha codes; requires rational entries and
/// throws ArithmeticError when the code exceeds kMaxTau.
std::uint64_t tau(const Vector& label);

/// (n+1)^(-tau)
Rational h_inject(std::uint64_t tau_value, std::size_t n);
Rational h_inject(const Vector& label, std::size_t n);

/// Sum of h over a multiset of codes (with repetition); at most n elements.
Rational phi_sum(const std::vector<std::uint64_t>& taus, std::size_t n);
Rational phi_sum(const std::vector<Vector>& bag, std::size_t n);

/// Multiplicity of each dictionary code in the multiset encoded by `value`.
/// Throws ArithmeticError when `value` is not in the image for this dictionary.
std::vector<std::size_t> phi_inverse(const Rational& value, std::size_t n,
                                     const std::vector<std::uint64_t>& dictionary);

/// Label-level form; the dictionary lists candidate labels, output is sorted
/// by dictionary position.
std::vector<Vector> phi_inverse(const Rational& value, std::size_t n,
                                const std::vector<Vector>& dictionary);

}  // namespace gnnpower
