#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gnnpower {

using BigInt = mpz_class;
using Rational = mpq_class;

/// An element of the multi-quadratic field Q(sqrt(2), sqrt(3), sqrt(5), ...).
///
/// Stored as a finite map from squarefree radicand to nonzero rational
/// coefficient; radicand 1 holds the rational part. Because square roots of
/// distinct squarefree integers are linearly independent over Q, two values
/// are equal exactly when their maps are identical, so equality never needs
/// numeric approximation.
class ExactScalar {
 public:
  using Terms = std::map<std::uint64_t, Rational>;

  ExactScalar() = default;
  ExactScalar(long value);  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// Builds a canonical value from raw (radicand, coefficient) pairs.
  /// Radicands need not be squarefree; non-positive radicands throw.
  static ExactScalar normalize(const std::vector<std::pair<std::int64_t, Rational>>& raw);

  /// sqrt(q) for a non-negative rational q.
  static ExactScalar sqrt_of(const Rational& q);

  /// Parses the text form, e.g. `1/2 + 1/4*sqrt(2) - sqrt(3)`.
  static ExactScalar parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_integer() const;
  /// Throws ArithmeticError unless is_rational().
  Rational rational_value() const;

  /// Exact sign in {-1, 0, +1}.
  int sign() const;
  ExactScalar inverse() const;
  double approx() const;

  /// Canonical text: rational part first, then radicands ascending.
  std::string str() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& other);
  ExactScalar& operator-=(const ExactScalar& other);
  ExactScalar& operator*=(const ExactScalar& other);
  ExactScalar& operator/=(const ExactScalar& other);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    return a * b.inverse();
  }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

/// Numeric three-way comparison: sign(a - b).
int compare(const ExactScalar& a, const ExactScalar& b);

/// Strict weak order on the canonical representation (not numeric order);
/// used for dictionary keys.
struct StructuralLess {
  bool operator()(const ExactScalar& a, const ExactScalar& b) const;
  bool operator()(const std::vector<ExactScalar>& a, const std::vector<ExactScalar>& b) const;
};

enum class Activation { None, Sign, Relu };

ExactScalar activate(const ExactScalar& value, Activation sigma);
std::string to_string(Activation sigma);
Activation parse_activation(std::string_view name);

/// Largest squarefree divisor decomposition: value = square * squarefree.
/// Returns {root_of_square_part, squarefree_part}.
std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t value);

/// Distinct prime factors of a positive integer, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t value);

/// Maximum number of distinct primes allowed in the radicands of a value
/// that is inverted.
inline constexpr std::size_t kMaxInversionPrimes = 12;

}  // namespace gnnpower
