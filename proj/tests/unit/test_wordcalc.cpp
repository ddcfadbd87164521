#include "holocontact/wordcalc.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace holocontact;

namespace {

NCPoly G(int i) { return NCPoly::letter(Family::G, i); }
NCPoly F(int i) { return NCPoly::letter(Family::F, i); }
NCPoly Gt(int i) { return NCPoly::letter(Family::Gt, i); }
NCPoly Z0() { return NCPoly::letter(Family::Z0); }
NCPoly Z0inv() { return NCPoly::letter(Family::Z0inv); }
Rational q(long a) { return Rational(a); }

}  // namespace

TEST(NCPoly, UnitAndCancellation) {
  const NCPoly p = G(1) * F(2) + q(3) * Gt(1);
  EXPECT_EQ(NCPoly::one() * p, p);
  EXPECT_EQ(p * NCPoly::one(), p);
  EXPECT_EQ(Z0() * Z0inv(), NCPoly::one());
  EXPECT_EQ(Z0inv() * Z0(), NCPoly::one());
  EXPECT_EQ(G(1) * Z0() * Z0inv() * G(2), G(1) * G(2));
  EXPECT_TRUE((p - p).is_zero());
}

TEST(NCPoly, OrderPreserved) {
  const NCPoly lhs = (G(1) + G(2)) * G(1);
  EXPECT_EQ(lhs, G(1) * G(1) + G(2) * G(1));
  EXPECT_NE(G(1) * G(2), G(2) * G(1));
  EXPECT_EQ(lhs.size(), 2u);
  EXPECT_EQ(lhs.coefficient({{Family::G, 2}, {Family::G, 1}}), q(1));
}

TEST(Sequences, FirstSteps) {
  const auto K = build_sequences(SequenceRule::Recur19, 2);
  EXPECT_EQ(K[1], -G(1));
  EXPECT_EQ(K[2], -G(2) + q(2) * G(1) * G(1));
  const auto Z = build_sequences(SequenceRule::R01, 1);
  EXPECT_EQ(Z[0], Z0());
  EXPECT_EQ(Z[1], G(1) * Z0() - Z0() * Gt(1));
  const auto H = build_sequences(SequenceRule::Recur1, 2);
  EXPECT_EQ(H[2], F(2) - q(2) * G(1) * F(1));
}

TEST(Sequences, TwoKRecursionsAgree) {
  const auto a = build_sequences(SequenceRule::Recur19, 6);
  const auto b = build_sequences(SequenceRule::Recur199, 6);
  for (int l = 1; l <= 6; ++l) EXPECT_EQ(a[l], b[l]) << l;
}

TEST(Sequences, FToHExpansion) {
  const int N = 6;
  const auto H = build_sequences(SequenceRule::Recur1, N);
  const auto K = build_sequences(SequenceRule::Recur19, N);
  for (int n = 1; n <= N; ++n) {
    NCPoly s = F(n);
    for (int i = 1; i < n; ++i) s += Rational(binomial(n, i)) * (K[i] * F(n - i));
    EXPECT_EQ(s, H[n]) << n;
  }
  EXPECT_EQ(H[2], F(2) + q(2) * K[1] * F(1));
}

TEST(Sequences, ISequenceExample) {
  const auto I = build_sequences(SequenceRule::RuuuI, 2, {3, 2});
  EXPECT_EQ(I[1], NCPoly::one());
  EXPECT_EQ(I[2], q(-2) * G(1));
  const auto H = build_sequences(SequenceRule::Recur1, 2);
  const NCPoly lhs = q(3) * I[1] * F(2) + q(3) * I[2] * F(1);
  EXPECT_EQ(lhs, q(3) * H[2]);
}

TEST(Coefficients, ClosedForm) {
  EXPECT_EQ(coefficient_of_word({1}), q(-1));
  EXPECT_EQ(coefficient_of_word({1, 1}), q(2));
  EXPECT_EQ(coefficient_of_word({2, 1, 1}), q(-12));
  const auto K = build_sequences(SequenceRule::Recur19, 4);
  const Word w{{Family::G, 2}, {Family::G, 1}, {Family::G, 1}};
  EXPECT_EQ(K[4].coefficient(w), q(-12));
}

TEST(Coefficients, MatchRecursionForAllWords) {
  const int N = 6;
  const auto K = build_sequences(SequenceRule::Recur19, N);
  for (int l = 1; l <= N; ++l) {
    std::size_t count = 0;
    for (const auto& [w, c] : K[l].terms()) {
      std::vector<int> idx;
      for (const auto& s : w) {
        ASSERT_EQ(s.family, Family::G);
        idx.push_back(s.index);
      }
      EXPECT_EQ(c, coefficient_of_word(idx));
      std::vector<int> perm = idx;
      std::sort(perm.begin(), perm.end());
      do EXPECT_EQ(coefficient_of_word(perm), c);
      while (std::next_permutation(perm.begin(), perm.end()));
      ++count;
    }
    EXPECT_EQ(count, std::size_t(1) << (l - 1));  // compositions of l
  }
}

TEST(Binomials, TripleIdentityInstance) {
  EXPECT_EQ(binomial(5, 2) * binomial(3, 1), 30);
  EXPECT_EQ(binomial(5, 3) * binomial(3, 1), 30);
}

TEST(Appendix, FullReportPasses) {
  const AppendixReport r = verify_appendix(5, 7);
  EXPECT_EQ(r.n_max, 5);
  EXPECT_FALSE(r.checks.empty());
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(r.all_passed());
}

TEST(Appendix, BoundEnforced) { EXPECT_ANY_THROW(verify_appendix(8)); }
