#include "consq/families.hpp"

#include <algorithm>

namespace consq {

namespace {

void require_reduced(const BigInt& eta, const BigInt& delta) {
  if (eta < 1 || delta < 1) throw DomainError("eta and delta must be >= 1");
  if (gcd(eta, delta) != 1) throw DomainError(eta.str() + "/" + delta.str() + " is not reduced");
}

}  // namespace

std::optional<BigInt> M_from(const BigInt& eta, const BigInt& delta, const BigInt& f) {
  require_reduced(eta, delta);
  if (f < 2) throw DomainError("M_from requires f >= 2");
  const BigInt sum = eta + delta;
  const BigInt delta_sq = delta * delta;
  const BigInt denominator = 3 * sum * sum + delta_sq;
  const BigInt numerator = delta_sq * (3 * f * f - 1);
  BigInt quotient, remainder;
  boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
  if (remainder != 0 || quotient <= 1) return std::nullopt;
  return quotient;
}

PairTerms derive_pair(const BigInt& eta, const BigInt& delta, const BigInt& f, const BigInt& m) {
  BigInt scaled, remainder;
  boost::multiprecision::divide_qr(BigInt(eta * m), delta, scaled, remainder);
  if (remainder != 0) throw ParityError("delta does not divide eta*M");
  const BigInt twice_a1 = scaled + 1 - f;
  if (residue(twice_a1, 2) != 0) throw ParityError("eta*M/delta + 1 - f is odd");
  if (twice_a1 < 2) throw RangeError("derived a1 = " + BigInt(twice_a1 / 2).str() + " is below 1");
  BigInt a1 = twice_a1 / 2;
  BigInt a2 = a1 + f;
  return {std::move(a1), std::move(a2)};
}

FamilyAttempt try_family_pair(const BigInt& eta, const BigInt& delta, const BigInt& f) {
  FamilyAttempt attempt;
  attempt.m = M_from(eta, delta, f);
  if (!attempt.m) return attempt;
  const BigInt& m = *attempt.m;

  PairTerms terms;
  try {
    terms = derive_pair(eta, delta, f, m);
  } catch (const ParityError&) {
    attempt.outcome = FamilyOutcome::ParityFailure;
    return attempt;
  } catch (const RangeError&) {
    attempt.outcome = FamilyOutcome::BelowRange;
    return attempt;
  }

  auto s1 = is_perfect_square(sum_closed_form(terms.a1, m));
  auto s2 = is_perfect_square(sum_closed_form(terms.a2, m));
  if (!s1 || !s2) {
    throw ClaimViolation("eta=" + eta.str() + " delta=" + delta.str() + " f=" + f.str() +
                         " M=" + m.str() + ": pair (" + terms.a1.str() + ", " + terms.a2.str() +
                         ") does not give two squares");
  }
  attempt.outcome = FamilyOutcome::Built;
  attempt.pair = FamilyPair{RatioMu(eta, delta), f, m, std::move(terms.a1), std::move(terms.a2),
                            std::move(*s1), std::move(*s2), 0};
  return attempt;
}

std::optional<FamilyPair> make_family_pair(const BigInt& eta, const BigInt& delta, const BigInt& f) {
  return try_family_pair(eta, delta, f).pair;
}

FamilyEnumeration enumerate_family(const BigInt& eta, const BigInt& delta, const BigInt& f_max) {
  require_reduced(eta, delta);
  if (f_max < 2) throw DomainError("enumerate_family requires f_max >= 2");
  FamilyEnumeration result;
  for (BigInt f = 2; f <= f_max; ++f) {
    auto attempt = try_family_pair(eta, delta, f);
    switch (attempt.outcome) {
      case FamilyOutcome::Built:
        attempt.pair->ordinal = result.pairs.size();
        result.pairs.push_back(std::move(*attempt.pair));
        break;
      case FamilyOutcome::ParityFailure: ++result.skipped_parity; break;
      case FamilyOutcome::BelowRange: ++result.skipped_range; break;
      case FamilyOutcome::NoIntegralM: break;
    }
  }
  return result;
}

std::vector<DetectedPair> detect_pairs(const BigInt& m, const std::vector<SumInstance>& solutions) {
  if (m < 2) throw DomainError("detect_pairs requires M >= 2");
  for (const auto& s : solutions) {
    if (s.m() != m) throw DomainError("detect_pairs given a solution with M = " + s.m().str());
  }
  std::vector<const SumInstance*> ordered;
  ordered.reserve(solutions.size());
  for (const auto& s : solutions) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(), [](auto* x, auto* y) { return x->a() < y->a(); });

  std::vector<DetectedPair> pairs;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      const SumInstance& lo = *ordered[i];
      const SumInstance& hi = *ordered[j];
      if (lo.a() == hi.a()) continue;
      RatioMu mu = reduce_fraction(lo.a() + hi.a() - 1, m);
      BigInt f = hi.a() - lo.a();
      const bool eq3 = f >= 2 && M_from(mu.eta(), mu.delta(), f) == m;
      pairs.push_back({lo, hi, std::move(mu), std::move(f), eq3});
    }
  }
  return pairs;
}

}  // namespace consq
