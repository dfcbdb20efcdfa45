#include "gnnpower/injection.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gnnpower/errors.hpp"

namespace gnnpower {
namespace {

const BigInt& power_of(std::size_t base, std::uint64_t exponent) {
  thread_local std::map<std::pair<std::size_t, std::uint64_t>, BigInt> cache;
  auto key = std::make_pair(base, exponent);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return cache.emplace(key, std::move(out)).first->second;
}

BigInt prime_power(std::size_t index, const BigInt& exponent) {
  if (!exponent.fits_ulong_p()) throw ArithmeticError("alpha exponent too large");
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), nth_prime(index), exponent.get_ui());
  return out;
}

// p(i, z)
BigInt p_factor(std::size_t i, const BigInt& z) {
  if (z >= 0) return prime_power(2 * i, z);
  return prime_power(2 * i + 1, BigInt(-z));
}

}  // namespace

std::uint64_t nth_prime(std::size_t i) {
  if (i == 0) throw ValidationError("primes are indexed from 1");
  thread_local std::vector<std::uint64_t> primes{2};
  for (std::uint64_t candidate = primes.back() + 1; primes.size() < i; ++candidate) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes[i - 1];
}

AlgebraicRep represent(const Rational& v) { return {{}, v, v}; }

BigInt alpha_encode(const BigInt& n1, const BigInt& n2, const BigInt& d1, const BigInt& d2,
                    const std::vector<BigInt>& poly) {
  BigInt out = p_factor(1, n1) * p_factor(2, n2) * p_factor(3, d1) * p_factor(4, d2);
  for (std::size_t i = 0; i < poly.size(); ++i) out *= p_factor(i + 5, poly[i]);
  return out;
}

BigInt alpha_encode(const AlgebraicRep& x) {
  return alpha_encode(x.lower.get_num(), x.upper.get_num(), x.lower.get_den(),
                      x.upper.get_den(), x.poly);
}

BigInt cantor_tuple(const std::vector<BigInt>& values) {
  if (values.empty()) throw ValidationError("cantor tuple of an empty tuple");
  BigInt acc = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    const BigInt& b = values[i];
    BigInt sum = acc + b;
    acc = sum * (sum + 1) / 2 + b;
  }
  return acc;
}

std::uint64_t tau(const Vector& label) {
  std::vector<BigInt> codes;
  codes.reserve(label.size());
  for (const auto& x : label) codes.push_back(alpha_encode(represent(x.rational_value())));
  BigInt code = cantor_tuple(codes);
  if (code > kMaxTau) {
    throw ArithmeticError("injection code " + code.get_str() + " exceeds the guard " +
                          std::to_string(kMaxTau));
  }
  return code.get_ui();
}

Rational h_inject(std::uint64_t tau_value, std::size_t n) {
  return Rational(BigInt(1), power_of(n + 1, tau_value));
}

Rational h_inject(const Vector& label, std::size_t n) { return h_inject(tau(label), n); }

Rational phi_sum(const std::vector<std::uint64_t>& taus, std::size_t n) {
  if (taus.size() > n) {
    throw ArithmeticError("multiset of size " + std::to_string(taus.size()) +
                          " overflows a base-" + std::to_string(n + 1) + " digit");
  }
  if (taus.empty()) return 0;
  // Common denominator (n+1)^max keeps the sum a single integer numerator.
  std::uint64_t top = *std::max_element(taus.begin(), taus.end());
  BigInt numerator = 0;
  for (auto t : taus) numerator += power_of(n + 1, top - t);
  Rational out(numerator, power_of(n + 1, top));
  out.canonicalize();
  return out;
}

Rational phi_sum(const std::vector<Vector>& bag, std::size_t n) {
  std::vector<std::uint64_t> taus;
  taus.reserve(bag.size());
  for (const auto& x : bag) taus.push_back(tau(x));
  return phi_sum(taus, n);
}

std::vector<std::size_t> phi_inverse(const Rational& value, std::size_t n,
                                     const std::vector<std::uint64_t>& dictionary) {
  std::vector<std::size_t> counts(dictionary.size(), 0);
  if (value < 0) throw ArithmeticError("negative value is not in the image of phi");
  if (value == 0) return counts;
  if (dictionary.empty()) throw ArithmeticError("nonzero value with an empty dictionary");
  if (std::set<std::uint64_t>(dictionary.begin(), dictionary.end()).size() != dictionary.size()) {
    throw ValidationError("dictionary codes must be distinct");
  }
  const std::size_t base = n + 1;
  std::uint64_t top = *std::max_element(dictionary.begin(), dictionary.end());
  Rational scaled = value * power_of(base, top);
  scaled.canonicalize();
  if (scaled.get_den() != 1) {
    throw ArithmeticError("value " + value.get_str() + " has digits beyond every dictionary position");
  }
  const BigInt& k = scaled.get_num();
  BigInt rebuilt = 0;
  for (std::size_t i = 0; i < dictionary.size(); ++i) {
    const BigInt& place = power_of(base, top - dictionary[i]);
    BigInt digit = (k / place) % base;
    counts[i] = digit.get_ui();
    rebuilt += digit * place;
  }
  if (rebuilt != k) {
    throw ArithmeticError("value " + value.get_str() +
                          " has a nonzero digit at a position outside the dictionary");
  }
  return counts;
}

std::vector<Vector> phi_inverse(const Rational& value, std::size_t n,
                                const std::vector<Vector>& dictionary) {
  std::vector<std::uint64_t> codes;
  codes.reserve(dictionary.size());
  for (const auto& x : dictionary) codes.push_back(tau(x));
  std::vector<std::size_t> counts = phi_inverse(value, n, codes);
  std::vector<Vector> bag;
  for (std::size_t i = 0; i < dictionary.size(); ++i) {
    for (std::size_t c = 0; c < counts[i]; ++c) bag.push_back(dictionary[i]);
  }
  return bag;
}

}  // namespace gnnpower
