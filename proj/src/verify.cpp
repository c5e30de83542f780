#include "consq/verify.hpp"

#include "consq/congruence.hpp"
#include "consq/families.hpp"
#include "consq/sums.hpp"

namespace consq {

namespace {

Violation triple_violation(const BigInt& eta, const BigInt& delta, const BigInt& f, const BigInt& m,
                           std::string reason) {
  return {eta, delta, f, std::nullopt, m, std::move(reason)};
}

// Table row, corollary divisor and admissibility for one (eta, delta, f, M).
// Returns the matched row id, or nothing when the row lookup failed.
std::optional<std::string> check_classification(const BigInt& eta, const BigInt& delta, const BigInt& f,
                                                const BigInt& m, std::vector<Violation>& out) {
  std::optional<std::string> row_id;
  try {
    const TableRow& row = match_table_row(eta, delta, f);
    if (row.m_class.contains(m)) {
      row_id = row.id;
    } else {
      out.push_back(triple_violation(eta, delta, f, m,
                                     "M not in " + row.id + " class " + row.m_class.to_string()));
    }
  } catch (const TheoremError& e) {
    out.push_back(triple_violation(eta, delta, f, m, std::string("no table row: ") + to_string(e.code())));
  }
  try {
    const BigInt divisor = corollary_moduli(eta, delta, f);
    if (m % divisor != 0) {
      out.push_back(triple_violation(eta, delta, f, m, "M not divisible by " + divisor.str()));
    }
  } catch (const TheoremError& e) {
    out.push_back(triple_violation(eta, delta, f, m, std::string("corollary: ") + to_string(e.code())));
  }
  if (!may_have_solutions(m)) {
    out.push_back(triple_violation(eta, delta, f, m, "M outside the admissible classes"));
  }
  return row_id;
}

nlohmann::ordered_json violation_json(const Violation& v) {
  nlohmann::ordered_json j;
  for (auto [key, field] : {std::pair{"eta", &v.eta}, {"delta", &v.delta}, {"f", &v.f}, {"a", &v.a}}) {
    if (*field) j[key] = field->value().str();
  }
  j["m"] = v.m.str();
  j["reason"] = v.reason;
  return j;
}

}  // namespace

VerifyReport& VerifyReport::merge(const VerifyReport& other) {
  swept += other.swept;
  instances += other.instances;
  skipped += other.skipped;
  for (const auto& [row, count] : other.per_row) per_row[row] += count;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  return *this;
}

nlohmann::ordered_json to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["swept"] = report.swept;
  j["instances"] = report.instances;
  j["per_row"] = nlohmann::ordered_json::object();
  for (const auto& [row, count] : report.per_row) j["per_row"][row] = count;
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) j["violations"].push_back(violation_json(v));
  j["skipped"] = report.skipped;
  return j;
}

VerifyReport report_from_json(const nlohmann::json& doc) {
  VerifyReport report;
  report.swept = doc.at("swept").get<std::uint64_t>();
  report.instances = doc.at("instances").get<std::uint64_t>();
  report.skipped = doc.at("skipped").get<std::uint64_t>();
  for (const auto& [row, count] : doc.at("per_row").items()) report.per_row[row] = count.get<std::uint64_t>();
  for (const auto& item : doc.at("violations")) {
    Violation v;
    auto read = [&](const char* key, std::optional<BigInt>& field) {
      if (item.contains(key)) field = parse_bigint(item.at(key).get<std::string>());
    };
    read("eta", v.eta);
    read("delta", v.delta);
    read("f", v.f);
    read("a", v.a);
    v.m = parse_bigint(item.at("m").get<std::string>());
    v.reason = item.at("reason").get<std::string>();
    report.violations.push_back(std::move(v));
  }
  return report;
}

VerifyReport verify_theorem_delta(const BigInt& delta, const BigInt& eta_max, const BigInt& f_max) {
  if (delta < 1 || eta_max < 1 || f_max < 2) throw DomainError("verify_theorem bounds too small");
  VerifyReport report;
  const auto f_per_eta = (f_max - 1).convert_to<std::uint64_t>();
  for (BigInt eta = 1; eta <= eta_max; ++eta) {
    report.swept += f_per_eta;
    if (gcd(eta, delta) != 1) {
      report.skipped += f_per_eta;
      continue;
    }
    for (BigInt f = 2; f <= f_max; ++f) {
      FamilyAttempt attempt;
      try {
        attempt = try_family_pair(eta, delta, f);
      } catch (const ClaimViolation& e) {
        ++report.instances;
        report.violations.push_back(triple_violation(eta, delta, f, *M_from(eta, delta, f), e.what()));
        continue;
      }
      if (attempt.outcome == FamilyOutcome::NoIntegralM) continue;
      if (attempt.outcome != FamilyOutcome::Built) {
        ++report.skipped;
        continue;
      }
      ++report.instances;
      const BigInt& m = *attempt.m;
      if (residue(eta, 2) != 1) report.violations.push_back(triple_violation(eta, delta, f, m, "eta even"));
      const unsigned d6 = residue(delta, 6);
      if (d6 != 0 && d6 != 1 && d6 != 5) {
        report.violations.push_back(triple_violation(eta, delta, f, m, "delta not 0, 1 or 5 (mod 6)"));
      }
      if (!eq5_identity(eta, delta, f, m)) {
        report.violations.push_back(triple_violation(eta, delta, f, m, "rearranged identity fails"));
      }
      if (auto row = check_classification(eta, delta, f, m, report.violations)) ++report.per_row[*row];
    }
  }
  return report;
}

VerifyReport verify_theorem(const BigInt& delta_max, const BigInt& eta_max, const BigInt& f_max) {
  if (delta_max < 1) throw DomainError("verify_theorem requires delta_max >= 1");
  VerifyReport report;
  for (BigInt delta = 1; delta <= delta_max; ++delta) report.merge(verify_theorem_delta(delta, eta_max, f_max));
  return report;
}

bool in_nonexistence_class(const BigInt& m) {
  switch (residue(m, 12)) {
    case 3: case 5: case 6: case 7: case 8: case 10: return true;
    default: return false;
  }
}

VerifyReport verify_nonexistence_m(const BigInt& m, const BigInt& a_max) {
  VerifyReport report;
  if (!in_nonexistence_class(m)) return report;
  report.swept = 1;
  for (const auto& s : find_roots_for_M(m, a_max)) {
    ++report.instances;
    report.violations.push_back({std::nullopt, std::nullopt, std::nullopt, s.a(), m,
                                 "solution with root " + s.root().str() + " in a nonexistence class"});
  }
  return report;
}

VerifyReport verify_nonexistence(const BigInt& m_max, const BigInt& a_max) {
  if (m_max < 3 || a_max < 1) throw DomainError("verify_nonexistence requires M_max >= 3, a_max >= 1");
  VerifyReport report;
  for (BigInt m = 3; m <= m_max; ++m) report.merge(verify_nonexistence_m(m, a_max));
  return report;
}

VerifyReport cross_check_m(const BigInt& m, const BigInt& a_max) {
  VerifyReport report;
  if (!may_have_solutions(m)) return report;
  report.swept = 1;
  const auto solutions = find_roots_for_M(m, a_max);
  report.instances = solutions.size();
  for (const auto& pair : detect_pairs(m, solutions)) {
    if (!pair.eq3_holds) continue;
    const BigInt& eta = pair.mu.eta();
    const BigInt& delta = pair.mu.delta();
    if (!eq5_identity(eta, delta, pair.f, m)) {
      report.violations.push_back(triple_violation(eta, delta, pair.f, m, "rearranged identity fails"));
    }
    if (auto row = check_classification(eta, delta, pair.f, m, report.violations)) ++report.per_row[*row];
  }
  return report;
}

VerifyReport cross_check(const BigInt& m_max, const BigInt& a_max) {
  if (m_max < 2 || a_max < 2) throw DomainError("cross_check requires M_max >= 2, a_max >= 2");
  VerifyReport report;
  for (BigInt m = 2; m <= m_max; ++m) report.merge(cross_check_m(m, a_max));
  return report;
}

}  // namespace consq
