#include "gnnpower/exact_scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "gnnpower/errors.hpp"

namespace gnnpower {
namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ArithmeticError("radicand product overflows 64 bits");
  }
  return out;
}

void accumulate(ExactScalar::Terms& terms, std::uint64_t radicand, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms.try_emplace(radicand, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
}

BigInt to_big(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

// floor(sqrt(radicand) * 2^bits); cached because sign() re-evaluates the same
// radicands many times during a run.
const BigInt& scaled_isqrt(std::uint64_t radicand, unsigned long bits) {
  thread_local std::map<std::pair<std::uint64_t, unsigned long>, BigInt> cache;
  auto key = std::make_pair(radicand, bits);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BigInt scaled = to_big(radicand);
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return cache.emplace(key, std::move(root)).first->second;
}

const std::vector<std::uint64_t>& cached_primes(std::uint64_t value) {
  thread_local std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> cache;
  auto it = cache.find(value);
  if (it != cache.end()) return it->second;
  return cache.emplace(value, prime_factors(value)).first->second;
}

// Inverts by eliminating one prime generator at a time: writing
// a = x + y*sqrt(p), 1/a = (x - y*sqrt(p)) / (x^2 - p*y^2), and the
// denominator no longer involves p. Unrolled over all primes this is the
// product of the nontrivial sign-flip conjugates divided by the norm.
ExactScalar invert_recursive(const ExactScalar& a) {
  if (a.is_rational()) {
    return ExactScalar(Rational(1) / a.rational_value());
  }
  std::uint64_t prime = 0;
  for (const auto& [radicand, coeff] : a.terms()) {
    for (auto p : cached_primes(radicand)) prime = std::max(prime, p);
  }
  std::vector<std::pair<std::int64_t, Rational>> x_raw, y_raw;
  for (const auto& [radicand, coeff] : a.terms()) {
    if (radicand % prime == 0) {
      y_raw.emplace_back(static_cast<std::int64_t>(radicand / prime), coeff);
    } else {
      x_raw.emplace_back(static_cast<std::int64_t>(radicand), coeff);
    }
  }
  ExactScalar x = ExactScalar::normalize(x_raw);
  ExactScalar y = ExactScalar::normalize(y_raw);
  ExactScalar root_p = ExactScalar::normalize({{static_cast<std::int64_t>(prime), Rational(1)}});
  ExactScalar norm = x * x - ExactScalar(Rational(static_cast<long>(prime))) * y * y;
  if (norm.is_zero()) {
    throw ArithmeticError("conjugate norm vanished for nonzero value " + a.str());
  }
  return (x - y * root_p) * invert_recursive(norm);
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t value) {
  if (value == 0) throw ArithmeticError("squarefree_split of zero");
  std::uint64_t root = 1;
  std::uint64_t free = 1;
  std::uint64_t rest = value;
  for (std::uint64_t p = 2; p <= rest / p; ++p) {
    unsigned count = 0;
    while (rest % p == 0) {
      rest /= p;
      ++count;
    }
    for (unsigned i = 0; i < count / 2; ++i) root *= p;
    if (count % 2 == 1) free *= p;
  }
  free = checked_mul(free, rest);
  return {root, free};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t value) {
  std::vector<std::uint64_t> out;
  std::uint64_t rest = value;
  for (std::uint64_t p = 2; p <= rest / p; ++p) {
    if (rest % p == 0) {
      out.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) out.push_back(rest);
  return out;
}

ExactScalar::ExactScalar(long value) {
  if (value != 0) terms_.emplace(1, Rational(value));
}

ExactScalar::ExactScalar(const Rational& value) {
  if (value != 0) {
    Rational canonical = value;
    canonical.canonicalize();
    terms_.emplace(1, canonical);
  }
}

ExactScalar ExactScalar::normalize(const std::vector<std::pair<std::int64_t, Rational>>& raw) {
  ExactScalar out;
  for (const auto& [radicand, coeff] : raw) {
    if (radicand <= 0) {
      throw ValidationError("radicand must be positive, got " + std::to_string(radicand));
    }
    auto [root, free] = squarefree_split(static_cast<std::uint64_t>(radicand));
    Rational scaled = coeff * to_big(root);
    scaled.canonicalize();
    accumulate(out.terms_, free, scaled);
  }
  return out;
}

ExactScalar ExactScalar::sqrt_of(const Rational& q) {
  if (q < 0) throw ArithmeticError("sqrt of negative rational " + q.get_str());
  if (q == 0) return {};
  // sqrt(a/b) = sqrt(a*b) / b
  BigInt product = q.get_num() * q.get_den();
  BigInt root_part;
  mpz_sqrt(root_part.get_mpz_t(), product.get_mpz_t());
  if (root_part * root_part == product) {
    return ExactScalar(Rational(root_part, q.get_den()));
  }
  if (!product.fits_ulong_p()) throw ArithmeticError("radicand too large: " + product.get_str());
  ExactScalar out;
  auto [root, free] = squarefree_split(product.get_ui());
  Rational coeff(to_big(root), q.get_den());
  coeff.canonicalize();
  out.terms_.emplace(free, coeff);
  return out;
}

bool ExactScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

bool ExactScalar::is_integer() const {
  return is_rational() && rational_value().get_den() == 1;
}

Rational ExactScalar::rational_value() const {
  if (!is_rational()) throw ArithmeticError("value is irrational: " + str());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int ExactScalar::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational()) return sgn(terms_.begin()->second);
  for (unsigned long bits = 64;; bits *= 2) {
    // Interval sum in units of 2^-bits.
    Rational lo = 0;
    Rational hi = 0;
    for (const auto& [radicand, coeff] : terms_) {
      if (radicand == 1) {
        Rational exact = coeff;
        mpq_mul_2exp(exact.get_mpq_t(), exact.get_mpq_t(), bits);
        lo += exact;
        hi += exact;
        continue;
      }
      const BigInt& floor_root = scaled_isqrt(radicand, bits);
      Rational a = coeff * floor_root;
      Rational b = coeff * (floor_root + 1);
      if (coeff > 0) {
        lo += a;
        hi += b;
      } else {
        lo += b;
        hi += a;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  std::set<std::uint64_t> primes;
  for (const auto& [radicand, coeff] : terms_) {
    for (auto p : cached_primes(radicand)) primes.insert(p);
  }
  if (primes.size() > kMaxInversionPrimes) {
    throw ArithmeticError("inversion needs " + std::to_string(primes.size()) +
                          " prime generators, limit is " +
                          std::to_string(kMaxInversionPrimes));
  }
  return invert_recursive(*this);
}

double ExactScalar::approx() const {
  double out = 0.0;
  for (const auto& [radicand, coeff] : terms_) {
    out += coeff.get_d() * std::sqrt(static_cast<double>(radicand));
  }
  return out;
}

std::string ExactScalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [radicand, coeff] : terms_) {
    Rational magnitude = abs(coeff);
    if (first) {
      if (coeff < 0) out += "-";
    } else {
      out += coeff < 0 ? " - " : " + ";
    }
    first = false;
    if (radicand == 1) {
      out += magnitude.get_str();
    } else {
      if (magnitude != 1) out += magnitude.get_str() + "*";
      out += "sqrt(" + std::to_string(radicand) + ")";
    }
  }
  return out;
}

ExactScalar ExactScalar::parse(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  if (compact.empty()) throw ParseError("empty scalar literal");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("bad scalar '" + std::string(text) + "': " + why);
  };
  auto read_digits = [&]() {
    std::size_t start = pos;
    while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
    if (start == pos) throw fail("expected digits at offset " + std::to_string(start));
    return compact.substr(start, pos - start);
  };
  auto read_sqrt = [&]() -> std::int64_t {
    if (compact.compare(pos, 5, "sqrt(") != 0) throw fail("expected sqrt(");
    pos += 5;
    std::string digits = read_digits();
    if (pos >= compact.size() || compact[pos] != ')') throw fail("expected )");
    ++pos;
    if (digits.size() > 18) throw fail("radicand too large");
    return std::stoll(digits);
  };

  std::vector<std::pair<std::int64_t, Rational>> raw;
  bool first = true;
  while (pos < compact.size()) {
    int sign = 1;
    if (compact[pos] == '+' || compact[pos] == '-') {
      sign = compact[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw fail("expected + or - between terms");
    }
    first = false;
    Rational coeff = 1;
    std::int64_t radicand = 1;
    if (compact.compare(pos, 4, "sqrt") == 0) {
      radicand = read_sqrt();
    } else {
      BigInt num(read_digits());
      BigInt den = 1;
      if (pos < compact.size() && compact[pos] == '/') {
        ++pos;
        den = BigInt(read_digits());
        if (den == 0) throw fail("zero denominator");
      }
      coeff = Rational(num, den);
      coeff.canonicalize();
      if (pos < compact.size() && compact[pos] == '*') {
        ++pos;
        radicand = read_sqrt();
      }
    }
    if (radicand <= 0) throw fail("radicand must be positive");
    raw.emplace_back(radicand, sign * coeff);
  }
  return normalize(raw);
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar out = *this;
  for (auto& [radicand, coeff] : out.terms_) coeff = -coeff;
  return out;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& other) {
  for (const auto& [radicand, coeff] : other.terms_) accumulate(terms_, radicand, coeff);
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& other) {
  for (const auto& [radicand, coeff] : other.terms_) accumulate(terms_, radicand, -coeff);
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& other) {
  *this = *this * other;
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& other) {
  *this = *this / other;
  return *this;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [r, c] : a.terms_) {
    for (const auto& [s, d] : b.terms_) {
      // sqrt(r) * sqrt(s) = g * sqrt((r/g) * (s/g)) for squarefree r, s.
      std::uint64_t g = std::gcd(r, s);
      Rational coeff = c * d;
      if (g != 1) coeff *= to_big(g);
      accumulate(out.terms_, checked_mul(r / g, s / g), coeff);
    }
  }
  return out;
}

int compare(const ExactScalar& a, const ExactScalar& b) {
  if (a == b) return 0;
  return (a - b).sign();
}

bool StructuralLess::operator()(const ExactScalar& a, const ExactScalar& b) const {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  auto ia = ta.begin();
  auto ib = tb.begin();
  for (; ia != ta.end() && ib != tb.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == ta.end() && ib != tb.end();
}

bool StructuralLess::operator()(const std::vector<ExactScalar>& a,
                                const std::vector<ExactScalar>& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), *this);
}

ExactScalar activate(const ExactScalar& value, Activation sigma) {
  switch (sigma) {
    case Activation::None:
      return value;
    case Activation::Relu:
      return value.sign() > 0 ? value : ExactScalar();
    case Activation::Sign:
      return ExactScalar(static_cast<long>(value.sign()));
  }
  return value;
}

std::string to_string(Activation sigma) {
  switch (sigma) {
    case Activation::None:
      return "none";
    case Activation::Sign:
      return "sign";
    case Activation::Relu:
      return "relu";
  }
  return "none";
}

Activation parse_activation(std::string_view name) {
  if (name == "none") return Activation::None;
  if (name == "sign") return Activation::Sign;
  if (name == "relu") return Activation::Relu;
  throw ParseError("unknown activation '" + std::string(name) + "'");
}

}  // namespace gnnpower
