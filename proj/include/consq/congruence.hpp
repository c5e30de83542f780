#pragma once

// Residue-class logic: admissible term counts, the rearranged pair identity,
// the Table 1 classification of (eta, delta, f) and the divisibility
// corollaries.

#include "consq/arith.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace consq {

/// A set of residues modulo `modulus`. Modulus 1 stands for "any value".
class ResidueClass {
 public:
  ResidueClass(unsigned modulus, std::initializer_list<unsigned> residues);
  ResidueClass(unsigned modulus, std::vector<unsigned> residues);

  unsigned modulus() const noexcept { return modulus_; }
  const std::vector<unsigned>& residues() const noexcept { return residues_; }

  bool contains(const BigInt& n) const;
  bool contains(std::uint64_t n) const { return contains_residue(static_cast<unsigned>(n % modulus_)); }
  bool contains_residue(unsigned r) const;
  bool is_any() const noexcept { return modulus_ == 1; }

  /// "1|5 (mod 6)", or "any".
  std::string to_string() const;

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

 private:
  unsigned modulus_;
  std::vector<unsigned> residues_;
};

/// One line of Table 1.
struct TableRow {
  std::string id;  // "T01".."T20", in table order
  ResidueClass delta_class;
  ResidueClass eta_class;
  ResidueClass f_class;
  ResidueClass m_class;

  bool matches(const BigInt& eta, const BigInt& delta, const BigInt& f) const;
};

/// The 20 rows, in the order they are printed in the published table.
std::span<const TableRow> table1();

/// CSV dump of table1(): a header and one line per row. Multiple residues
/// in a field are separated by '|'.
std::string table1_csv();

enum class TheoremErrc { InvalidEta, InvalidDelta, NotReduced, NoAdmissibleRow };

const char* to_string(TheoremErrc code) noexcept;

class TheoremError : public DomainError {
 public:
  TheoremError(TheoremErrc code, const std::string& what) : DomainError(what), code_(code) {}
  TheoremErrc code() const noexcept { return code_; }

 private:
  TheoremErrc code_;
};

/// Whether M lies in a residue class where solutions can exist:
/// non-square M with M = 0,9,24,33 (mod 72), 1,2,16 (mod 24) or 11 (mod 12),
/// or square M with M = 1 (mod 24).
bool may_have_solutions(const BigInt& m);

/// 3(delta f)^2 - 3M(eta+delta)^2 == delta^2 (M+1), exactly.
bool eq5_identity(const BigInt& eta, const BigInt& delta, const BigInt& f, const BigInt& m);

/// The Table 1 row for (eta, delta, f). Throws TheoremError.
const TableRow& match_table_row(const BigInt& eta, const BigInt& delta, const BigInt& f);

/// Residue class Table 1 prescribes for M. Throws TheoremError.
ResidueClass theorem_row(const BigInt& eta, const BigInt& delta, const BigInt& f);

/// Divisor M must have: delta^2 or delta^2/3 (delta = 1,5 or 0 mod 6),
/// doubled when f is odd. Throws TheoremError.
BigInt corollary_moduli(const BigInt& eta, const BigInt& delta, const BigInt& f);

/// Refined admissibility class of M.
struct MClass {
  bool forbidden = true;
  unsigned modulus = 0;
  unsigned residue = 0;

  /// "2 (mod 24)" or "forbidden".
  std::string label() const;
};

MClass classify_M(const BigInt& m);

}  // namespace consq
