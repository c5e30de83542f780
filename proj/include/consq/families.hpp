#pragma once

// Pairs of first terms (a1, a2) sharing one term count M, linked by
//   a1 + a2 = (eta/delta) M + 1,   a2 - a1 = f,
//   M = delta^2 (3f^2 - 1) / (3(eta+delta)^2 + delta^2).

#include "consq/arith.hpp"
#include "consq/sums.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace consq {

/// ηM/δ + 1 − f is odd, or δ does not divide ηM: no integer pair exists.
class ParityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The derived first term a1 is below 1.
class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A pair built from a valid (eta, delta, f) whose sums are not both
/// perfect squares. Never expected; it would contradict the family formula.
class ClaimViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct FamilyPair {
  RatioMu mu;
  BigInt f;
  BigInt m;
  BigInt a1;
  BigInt a2;
  BigInt s1;
  BigInt s2;
  std::size_t ordinal = 0;  // discovery index by increasing f within one mu
};

/// M for (eta, delta, f) when the quotient is exact and > 1.
std::optional<BigInt> M_from(const BigInt& eta, const BigInt& delta, const BigInt& f);

struct PairTerms {
  BigInt a1;
  BigInt a2;
};

/// a1 = (ηM/δ + 1 − f)/2, a2 = a1 + f. Throws ParityError or RangeError.
PairTerms derive_pair(const BigInt& eta, const BigInt& delta, const BigInt& f, const BigInt& m);

enum class FamilyOutcome { Built, NoIntegralM, ParityFailure, BelowRange };

struct FamilyAttempt {
  FamilyOutcome outcome = FamilyOutcome::NoIntegralM;
  std::optional<BigInt> m;
  std::optional<FamilyPair> pair;
};

/// M_from -> derive_pair -> square check, reporting why no pair was built.
/// Throws ClaimViolation when a derived pair fails the square check.
FamilyAttempt try_family_pair(const BigInt& eta, const BigInt& delta, const BigInt& f);

/// The verified pair for (eta, delta, f), or nullopt. Throws ClaimViolation.
std::optional<FamilyPair> make_family_pair(const BigInt& eta, const BigInt& delta, const BigInt& f);

struct FamilyEnumeration {
  std::vector<FamilyPair> pairs;
  std::size_t skipped_parity = 0;  // integral M but no integer pair
  std::size_t skipped_range = 0;   // integral M, a1 < 1
};

/// Every pair with 2 <= f <= f_max, ordered by f.
FamilyEnumeration enumerate_family(const BigInt& eta, const BigInt& delta, const BigInt& f_max);

struct DetectedPair {
  SumInstance first;
  SumInstance second;
  RatioMu mu;
  BigInt f;
  bool eq3_holds = false;
};

/// Every pair a1 < a2 among solutions sharing M, with mu = (a1+a2-1)/M in
/// lowest terms and whether the family formula reproduces M.
std::vector<DetectedPair> detect_pairs(const BigInt& m, const std::vector<SumInstance>& solutions);

}  // namespace consq
