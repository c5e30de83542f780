#pragma once

// Exhaustive bounded checks of the residue-class theorem, its divisibility
// corollaries and the nonexistence classes. Failures are collected as data.

#include "consq/arith.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace consq {

struct Violation {
  std::optional<BigInt> eta;
  std::optional<BigInt> delta;
  std::optional<BigInt> f;
  std::optional<BigInt> a;
  BigInt m;
  std::string reason;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerifyReport {
  std::uint64_t swept = 0;
  std::uint64_t instances = 0;
  std::map<std::string, std::uint64_t> per_row;
  std::vector<Violation> violations;
  std::uint64_t skipped = 0;

  bool ok() const noexcept { return violations.empty(); }

  /// Counts add, per_row maps add key-wise, violations concatenate.
  VerifyReport& merge(const VerifyReport& other);

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

/// {"swept", "instances", "per_row", "violations", "skipped"}; big values
/// are decimal strings.
nlohmann::ordered_json to_json(const VerifyReport& report);
VerifyReport report_from_json(const nlohmann::json& doc);

/// Theorem checks for one delta; verify_theorem merges these in delta order.
VerifyReport verify_theorem_delta(const BigInt& delta, const BigInt& eta_max, const BigInt& f_max);

/// Sweeps delta <= delta_max, eta <= eta_max, 2 <= f <= f_max. A triple is
/// an instance when M_from is integral and an integer pair with a1 >= 1
/// exists; integral M without such a pair counts as skipped, as do gcd
/// failures. Each instance must have odd eta, delta = 0,1,5 (mod 6), M in
/// its Table 1 class and admissible, the rearranged identity, the corollary
/// divisor, and two perfect-square sums.
VerifyReport verify_theorem(const BigInt& delta_max, const BigInt& eta_max, const BigInt& f_max);

/// True for M = 3,5,6,7,8,10 (mod 12).
bool in_nonexistence_class(const BigInt& m);

/// Brute force for one M; any solution is a violation.
VerifyReport verify_nonexistence_m(const BigInt& m, const BigInt& a_max);

VerifyReport verify_nonexistence(const BigInt& m_max, const BigInt& a_max);

/// Pair detection for one admissible M; eq3 pairs must match Table 1 and
/// the corollary divisor.
VerifyReport cross_check_m(const BigInt& m, const BigInt& a_max);

VerifyReport cross_check(const BigInt& m_max, const BigInt& a_max);

}  // namespace consq
