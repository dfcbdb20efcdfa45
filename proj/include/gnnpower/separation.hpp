#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gnnpower/matrix.hpp"

namespace gnnpower {

/// U with uniq(L) U = I, where uniq keeps first occurrences. Rows of U
/// outside the pivot columns of uniq(L) are zero. Throws ValidationError
/// when the unique rows are linearly dependent.
Matrix right_inverse(const Matrix& l);

struct SeparationResult {
  Matrix x;  // w x m
  ExactScalar q;
  /// Rows of C in descending order of c = C z.
  std::vector<std::size_t> permutation;
  std::size_t base = 0;
  /// Greatest entry of E strictly below 1; absent when m = 1.
  std::optional<ExactScalar> q_max;
  /// sigma(C X - q J), checked non-singular.
  Matrix activated;
  ExactScalar determinant;
};

/// Largest integer not above x.
BigInt floor_of(const ExactScalar& x);

/// Non-negative C with pairwise distinct, nonzero rows. With `q_override`
/// the threshold is fixed instead of derived and must lie strictly between
/// q_max and 1. Throws ValidationError on bad input and VerificationFailure
/// if the activated matrix is singular.
SeparationResult relu_separation(const Matrix& c,
                                 const std::optional<ExactScalar>& q_override = std::nullopt);
/// Threshold (q_max + 1) / 2, or 1/2 when m = 1.
SeparationResult sign_separation(const Matrix& c,
                                 const std::optional<ExactScalar>& q_override = std::nullopt);

SeparationResult separate(const Matrix& c, Activation sigma,
                          const std::optional<ExactScalar>& q_override = std::nullopt);

}  // namespace gnnpower
