#include "consq/sums.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using consq::BigInt;

TEST(SumClosedForm, SpecValues) {
  EXPECT_EQ(consq::sum_closed_form(1, 1), 1);
  EXPECT_EQ(consq::sum_closed_form(3, 2), 25);
  EXPECT_EQ(consq::sum_closed_form(1, 24), 4900);
}

TEST(SumNaive, SpecValues) {
  EXPECT_EQ(consq::sum_naive(1, 1), 1);
  EXPECT_EQ(consq::sum_naive(44, 50), 245025);
  EXPECT_EQ(consq::sum_naive(67, 50), 429025);
}

TEST(Sums, DomainErrors) {
  EXPECT_THROW(consq::sum_closed_form(0, 3), consq::DomainError);
  EXPECT_THROW(consq::sum_closed_form(3, 0), consq::DomainError);
  EXPECT_THROW(consq::sum_naive(-1, 3), consq::DomainError);
  EXPECT_THROW(consq::find_roots_for_M(1, 10), consq::DomainError);
  EXPECT_THROW(consq::find_roots_for_M(2, 0), consq::DomainError);
  EXPECT_THROW(consq::scan(5, 4, 10, false), consq::DomainError);
  EXPECT_THROW(consq::scan(1, 4, 10, false), consq::DomainError);
}

TEST(Sums, ClosedFormMatchesInt128Oracle) {
  for (std::uint64_t a = 1; a <= 120; a += 7) {
    for (std::uint64_t m = 1; m <= 120; m += 5) {
      ASSERT_EQ(consq::sum_closed_form(a, m).str(), oracle::to_string(oracle::sum_squares(a, m)));
    }
  }
}

TEST(Sums, IncrementalIdentity) {
  for (int a = 1; a <= 300; ++a) {
    for (int m = 1; m <= 300; ++m) {
      ASSERT_EQ(consq::sum_naive(a + 1, m) - consq::sum_naive(a, m), BigInt(m) * (2 * a + m));
    }
  }
}

TEST(Sums, ClosedFormStaysExactBeyond64Bits) {
  const BigInt a("1000000000000");
  EXPECT_EQ(consq::sum_closed_form(a, 1000), consq::sum_naive(a, 1000));
}

TEST(FindRoots, SpecValues) {
  const auto m2 = consq::find_roots_for_M(2, 100);
  ASSERT_EQ(m2.size(), 2u);
  EXPECT_EQ(m2[0].a(), 3);
  EXPECT_EQ(m2[0].root(), 5);
  EXPECT_EQ(m2[1].a(), 20);
  EXPECT_EQ(m2[1].root(), 29);

  const auto m11 = consq::find_roots_for_M(11, 100);
  ASSERT_EQ(m11.size(), 2u);
  EXPECT_EQ(m11[0].a(), 18);
  EXPECT_EQ(m11[0].root(), 77);
  EXPECT_EQ(m11[1].a(), 38);
  EXPECT_EQ(m11[1].root(), 143);

  EXPECT_TRUE(consq::find_roots_for_M(3, 10'000).empty());
}

TEST(FindRoots, MatchesBruteForceOracle) {
  for (std::uint64_t m = 2; m <= 60; ++m) {
    const auto found = consq::find_roots_for_M(m, 3000);
    const auto expected = oracle::brute_force_roots(m, 3000);
    ASSERT_EQ(found.size(), expected.size()) << "M=" << m;
    for (std::size_t i = 0; i < found.size(); ++i) {
      EXPECT_EQ(found[i].a(), expected[i].a);
      EXPECT_EQ(found[i].root().str(), oracle::to_string(expected[i].root));
      EXPECT_EQ(found[i].m(), m);
      EXPECT_EQ(found[i].root() * found[i].root(), found[i].total());
    }
  }
}

TEST(FindRoots, NonexistenceClassesUpToOneHundred) {
  for (int m = 2; m <= 100; ++m) {
    const int r = m % 12;
    if (r == 3 || r == 5 || r == 6 || r == 7 || r == 8 || r == 10) {
      ASSERT_TRUE(consq::find_roots_for_M(m, 100'000).empty()) << "M=" << m;
    }
  }
}

TEST(Scan, SpecValues) {
  const auto grid = consq::scan(2, 12, 100, false);
  ASSERT_EQ(grid.instances.size(), 4u);
  for (const auto& s : grid.instances) EXPECT_TRUE(s.m() == 2 || s.m() == 11);
  EXPECT_TRUE(grid.skipped.empty());

  const auto m3 = consq::scan(3, 3, 10'000, true);
  EXPECT_TRUE(m3.instances.empty());
  ASSERT_EQ(m3.skipped.size(), 1u);
  EXPECT_EQ(m3.skipped[0], 3);

  const auto m24 = consq::scan(24, 24, 10, false);
  ASSERT_EQ(m24.instances.size(), 2u);
  EXPECT_EQ(m24.instances[0].a(), 1);
  EXPECT_EQ(m24.instances[0].root(), 70);
  EXPECT_EQ(m24.instances[1].a(), 9);
  EXPECT_EQ(m24.instances[1].root(), 106);
}

TEST(Scan, OrderedByMThenA) {
  const auto result = consq::scan(2, 60, 2000, true);
  for (std::size_t i = 1; i < result.instances.size(); ++i) {
    const auto& p = result.instances[i - 1];
    const auto& q = result.instances[i];
    ASSERT_TRUE(p.m() < q.m() || (p.m() == q.m() && p.a() < q.a()));
  }
  // The prefilter never drops a real solution.
  EXPECT_EQ(result.instances, consq::scan(2, 60, 2000, false).instances);
}

TEST(SumInstance, ConstructionRechecksRoot) {
  EXPECT_NO_THROW(consq::SumInstance(3, 2, 25, 5));
  EXPECT_THROW(consq::SumInstance(3, 2, 25, 6), consq::DomainError);
  EXPECT_THROW(consq::SumInstance(0, 2, 1, 1), consq::DomainError);
  EXPECT_THROW(consq::SumInstance(1, 1, 1, 1), consq::DomainError);
}
