#include "consq/congruence.hpp"

#include <algorithm>
#include <sstream>

namespace consq {

ResidueClass::ResidueClass(unsigned modulus, std::initializer_list<unsigned> residues)
    : ResidueClass(modulus, std::vector<unsigned>(residues)) {}

ResidueClass::ResidueClass(unsigned modulus, std::vector<unsigned> residues)
    : modulus_(modulus), residues_(std::move(residues)) {
  if (modulus_ == 0) throw DomainError("residue class modulus must be positive");
  if (residues_.empty()) throw DomainError("residue class must be non-empty");
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
  if (residues_.back() >= modulus_) throw DomainError("residue out of range");
}

bool ResidueClass::contains(const BigInt& n) const { return contains_residue(residue(n, modulus_)); }

bool ResidueClass::contains_residue(unsigned r) const {
  return std::binary_search(residues_.begin(), residues_.end(), r % modulus_);
}

std::string ResidueClass::to_string() const {
  if (is_any()) return "any";
  std::ostringstream out;
  for (std::size_t i = 0; i < residues_.size(); ++i) out << (i ? "|" : "") << residues_[i];
  out << " (mod " << modulus_ << ")";
  return out.str();
}

bool TableRow::matches(const BigInt& eta, const BigInt& delta, const BigInt& f) const {
  return delta_class.contains(delta) && eta_class.contains(eta) && f_class.contains(f);
}

std::span<const TableRow> table1() {
  static const std::vector<TableRow> rows = {
      // delta = 0 (mod 6), keyed on delta mod 36; M modulo 144.
      {"T01", {36, {0}}, {6, {1, 5}}, {1, {0}}, {144, {0}}},
      {"T02", {36, {12, 24}}, {6, {1, 5}}, {1, {0}}, {144, {96}}},
      {"T03", {36, {6, 30}}, {6, {1, 5}}, {2, {1}}, {144, {24}}},
      {"T04", {36, {18}}, {6, {1, 5}}, {2, {1}}, {144, {72}}},
      // delta = 1 or 5 (mod 6), f odd; M modulo 72.
      {"T05", {6, {1}}, {6, {1, 3}}, {6, {1, 5}}, {72, {50}}},
      {"T06", {6, {1}}, {6, {5}}, {6, {1, 5}}, {72, {2}}},
      {"T07", {6, {1}}, {6, {1, 3}}, {6, {3}}, {72, {2}}},
      {"T08", {6, {1}}, {6, {5}}, {6, {3}}, {72, {26}}},
      {"T09", {6, {5}}, {6, {1}}, {6, {1, 5}}, {72, {2}}},
      {"T10", {6, {5}}, {6, {3, 5}}, {6, {1, 5}}, {72, {50}}},
      {"T11", {6, {5}}, {6, {1}}, {6, {3}}, {72, {26}}},
      {"T12", {6, {5}}, {6, {3, 5}}, {6, {3}}, {72, {2}}},
      // delta = 1 or 5 (mod 6), f even; M modulo 36.
      {"T13", {6, {1}}, {6, {1, 3}}, {6, {0}}, {36, {11}}},
      {"T14", {6, {1}}, {6, {5}}, {6, {0}}, {36, {35}}},
      {"T15", {6, {1}}, {6, {1, 3}}, {6, {2, 4}}, {36, {23}}},
      {"T16", {6, {1}}, {6, {5}}, {6, {2, 4}}, {36, {11}}},
      {"T17", {6, {5}}, {6, {1}}, {6, {0}}, {36, {35}}},
      {"T18", {6, {5}}, {6, {3, 5}}, {6, {0}}, {36, {11}}},
      {"T19", {6, {5}}, {6, {1}}, {6, {2, 4}}, {36, {11}}},
      {"T20", {6, {5}}, {6, {3, 5}}, {6, {2, 4}}, {36, {23}}},
  };
  return rows;
}

std::string table1_csv() {
  auto residues = [](const ResidueClass& c) {
    std::string out;
    for (std::size_t i = 0; i < c.residues().size(); ++i) {
      out += (i ? "|" : "") + std::to_string(c.residues()[i]);
    }
    return out;
  };
  std::ostringstream out;
  out << "delta_mod,delta_res,eta_mod,eta_res,f_mod,f_res,m_mod,m_res\n";
  for (const auto& row : table1()) {
    for (const auto* c : {&row.delta_class, &row.eta_class, &row.f_class, &row.m_class}) {
      out << c->modulus() << ',' << residues(*c) << (c == &row.m_class ? '\n' : ',');
    }
  }
  return out.str();
}

const char* to_string(TheoremErrc code) noexcept {
  switch (code) {
    case TheoremErrc::InvalidEta: return "InvalidEta";
    case TheoremErrc::InvalidDelta: return "InvalidDelta";
    case TheoremErrc::NotReduced: return "NotReduced";
    case TheoremErrc::NoAdmissibleRow: return "NoAdmissibleRow";
  }
  return "unknown";
}

bool may_have_solutions(const BigInt& m) {
  if (m < 2) throw DomainError("may_have_solutions requires M >= 2");
  const unsigned r72 = residue(m, 72);
  if (is_perfect_square(m)) return r72 % 24 == 1;
  const unsigned r24 = r72 % 24;
  return r72 == 0 || r72 == 9 || r72 == 24 || r72 == 33 || r24 == 1 || r24 == 2 || r24 == 16 ||
         r72 % 12 == 11;
}

bool eq5_identity(const BigInt& eta, const BigInt& delta, const BigInt& f, const BigInt& m) {
  if (eta < 1 || delta < 1 || f < 1 || m < 1) throw DomainError("eq5_identity arguments must be >= 1");
  const BigInt df = delta * f;
  const BigInt sum = eta + delta;
  return 3 * df * df - 3 * m * sum * sum == delta * delta * (m + 1);
}

namespace {

void check_theorem_inputs(const BigInt& eta, const BigInt& delta, const BigInt& f, bool need_odd_eta) {
  if (eta < 1 || delta < 1 || f < 1) throw DomainError("eta, delta and f must be >= 1");
  if (gcd(eta, delta) != 1) {
    throw TheoremError(TheoremErrc::NotReduced, eta.str() + "/" + delta.str() + " is not reduced");
  }
  if (need_odd_eta && residue(eta, 2) == 0) throw TheoremError(TheoremErrc::InvalidEta, "eta must be odd");
  const unsigned d6 = residue(delta, 6);
  if (d6 != 0 && d6 != 1 && d6 != 5) {
    throw TheoremError(TheoremErrc::InvalidDelta, "delta must be 0, 1 or 5 (mod 6)");
  }
}

}  // namespace

const TableRow& match_table_row(const BigInt& eta, const BigInt& delta, const BigInt& f) {
  check_theorem_inputs(eta, delta, f, true);
  for (const auto& row : table1()) {
    if (row.matches(eta, delta, f)) return row;
  }
  throw TheoremError(TheoremErrc::NoAdmissibleRow,
                     "no Table 1 row for delta = " + std::to_string(residue(delta, 36)) +
                         " (mod 36) with f = " + std::to_string(residue(f, 2)) + " (mod 2)");
}

ResidueClass theorem_row(const BigInt& eta, const BigInt& delta, const BigInt& f) {
  return match_table_row(eta, delta, f).m_class;
}

BigInt corollary_moduli(const BigInt& eta, const BigInt& delta, const BigInt& f) {
  check_theorem_inputs(eta, delta, f, false);
  BigInt divisor = delta * delta;
  if (residue(delta, 6) == 0) divisor /= 3;
  if (residue(f, 2) == 1) divisor *= 2;
  return divisor;
}

std::string MClass::label() const {
  if (forbidden) return "forbidden";
  return std::to_string(residue) + " (mod " + std::to_string(modulus) + ")";
}

MClass classify_M(const BigInt& m) {
  if (!may_have_solutions(m)) return {};
  const unsigned r72 = residue(m, 72);
  if (r72 == 0 || r72 == 9 || r72 == 24 || r72 == 33) return {false, 72, r72};
  const unsigned r24 = r72 % 24;
  if (r24 == 1 || r24 == 2 || r24 == 16) return {false, 24, r24};
  return {false, 12, 11};
}

}  // namespace consq
