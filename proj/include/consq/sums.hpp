#pragma once

// Sums of M consecutive squares a^2 + (a+1)^2 + ... + (a+M-1)^2.

#include "consq/arith.hpp"

#include <vector>

namespace consq {

/// One solution: the M squares starting at a^2 add up to root^2.
class SumInstance {
 public:
  /// Re-checks root^2 == total, a >= 1 and M >= 2; throws DomainError otherwise.
  SumInstance(BigInt a, BigInt m, BigInt total, BigInt root);

  const BigInt& a() const noexcept { return a_; }
  const BigInt& m() const noexcept { return m_; }
  const BigInt& total() const noexcept { return total_; }
  const BigInt& root() const noexcept { return root_; }

  friend bool operator==(const SumInstance&, const SumInstance&) = default;

 private:
  BigInt a_;
  BigInt m_;
  BigInt total_;
  BigInt root_;
};

/// M*a^2 + M(M-1)*a + (M-1)M(2M-1)/6, evaluated without fractional terms.
BigInt sum_closed_form(const BigInt& a, const BigInt& m);

/// Literal loop over the M terms; the oracle for sum_closed_form.
BigInt sum_naive(const BigInt& a, const BigInt& m);

/// All solutions with 1 <= a <= a_max (inclusive), ordered by a.
std::vector<SumInstance> find_roots_for_M(const BigInt& m, const BigInt& a_max);

struct ScanResult {
  std::vector<SumInstance> instances;  // ordered by (M, a)
  std::vector<BigInt> skipped;         // M values rejected by the prefilter
};

/// Runs find_roots_for_M for every M in [m_min, m_max]. With prefilter set,
/// M values failing may_have_solutions are skipped and listed.
ScanResult scan(const BigInt& m_min, const BigInt& m_max, const BigInt& a_max, bool prefilter);

}  // namespace consq
