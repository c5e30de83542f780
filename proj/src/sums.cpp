#include "consq/sums.hpp"

#include "consq/congruence.hpp"

namespace consq {

namespace {

void require_terms(const BigInt& a, const BigInt& m) {
  if (a < 1) throw DomainError("first term a must be >= 1");
  if (m < 1) throw DomainError("term count M must be >= 1");
}

}  // namespace

SumInstance::SumInstance(BigInt a, BigInt m, BigInt total, BigInt root)
    : a_(std::move(a)), m_(std::move(m)), total_(std::move(total)), root_(std::move(root)) {
  if (a_ < 1) throw DomainError("instance first term must be >= 1");
  if (m_ < 2) throw DomainError("instance term count must be >= 2");
  if (root_ < 1 || root_ * root_ != total_) {
    throw DomainError("instance root " + root_.str() + " does not square to " + total_.str());
  }
}

BigInt sum_closed_form(const BigInt& a, const BigInt& m) {
  require_terms(a, m);
  // (M-1)M(2M-1) is six times the sum of the first M-1 squares, so the
  // division is exact.
  return m * a * a + m * (m - 1) * a + (m - 1) * m * (2 * m - 1) / 6;
}

BigInt sum_naive(const BigInt& a, const BigInt& m) {
  require_terms(a, m);
  BigInt total = 0;
  for (BigInt i = 0; i < m; ++i) {
    const BigInt term = a + i;
    total += term * term;
  }
  return total;
}

std::vector<SumInstance> find_roots_for_M(const BigInt& m, const BigInt& a_max) {
  if (m < 2) throw DomainError("find_roots_for_M requires M >= 2");
  if (a_max < 1) throw DomainError("find_roots_for_M requires a_max >= 1");

  std::vector<SumInstance> found;
  BigInt total = sum_closed_form(1, m);
  // S(a+1, M) - S(a, M) = (a+M)^2 - a^2 = M(2a + M).
  BigInt step = m * (2 + m);
  const BigInt step_increment = 2 * m;
  for (BigInt a = 1; a <= a_max; ++a) {
    if (auto root = is_perfect_square(total)) {
      found.emplace_back(a, m, total, std::move(*root));
    }
    total += step;
    step += step_increment;
  }
  return found;
}

ScanResult scan(const BigInt& m_min, const BigInt& m_max, const BigInt& a_max, bool prefilter) {
  if (m_min < 2 || m_min > m_max) throw DomainError("scan requires 2 <= m_min <= m_max");
  ScanResult result;
  for (BigInt m = m_min; m <= m_max; ++m) {
    if (prefilter && !may_have_solutions(m)) {
      result.skipped.push_back(m);
      continue;
    }
    auto found = find_roots_for_M(m, a_max);
    result.instances.insert(result.instances.end(), std::make_move_iterator(found.begin()),
                            std::make_move_iterator(found.end()));
  }
  return result;
}

}  // namespace consq
