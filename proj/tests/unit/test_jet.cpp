#include "holocontact/errors.hpp"
#include "holocontact/jet.hpp"
#include "holocontact/kernel_expr.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace holocontact;

namespace {

const Point origin1{Complex(0.0)};

Complex c(const HermJet& j, int a, int b) { return j.coeff(MultiIndex{a}, MultiIndex{b})(0, 0); }

void expect_diag_series(const HermJet& j, auto&& coeff, double tol = 1e-13) {
  for (int a = 0; a <= j.holo_order(); ++a)
    for (int b = 0; b <= j.anti_order(); ++b) {
      const Complex want = a == b ? Complex(coeff(a)) : Complex(0.0);
      EXPECT_NEAR(std::abs(c(j, a, b) - want), 0.0, tol) << a << "," << b;
    }
}

HermJet jet_of(const char* text, int order = 3, Point center = origin1) {
  return eval_herm_jet(parse_kernel(text), center, order, order);
}

}  // namespace

TEST(HermJet, IdentityTimesTruncates) {
  const HermJet b = jet_of("exp(z1*zb1 + z1)", 4);
  const HermJet I = HermJet::identity(origin1, 2, 3, 1);
  const HermJet p = jet_mul(I, b);
  EXPECT_EQ(p.holo_order(), 2);
  EXPECT_EQ(p.anti_order(), 3);
  for (int a = 0; a <= 2; ++a)
    for (int q = 0; q <= 3; ++q) EXPECT_NEAR(std::abs(c(p, a, q) - c(b, a, q)), 0.0, 1e-15);
}

TEST(HermJet, CoordinateProduct) {
  const HermJet z = HermJet::coordinate(origin1, 2, 2, 0, false);
  const HermJet zb = HermJet::coordinate(origin1, 2, 2, 0, true);
  const HermJet p = jet_mul(z, zb);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) EXPECT_EQ(c(p, a, b), (a == 1 && b == 1) ? Complex(1.0) : Complex(0.0));
}

TEST(HermJet, GeometricSeriesSquared) {
  const HermJet g = jet_of("pow(1 - z1*zb1, -1)", 5);
  expect_diag_series(jet_mul(g, g), [](int k) { return double(k + 1); });
}

TEST(HermJet, InverseOfConstant) {
  Matrix M(2, 2);
  M << Complex(2, 1), 1, 0, Complex(0, 3);
  const HermJet inv = jet_inv(HermJet::constant(origin1, 2, 2, M));
  EXPECT_LT((inv.value() - M.inverse()).norm(), 1e-14);
  EXPECT_LT(inv.max_norm(true), 1e-15);
}

TEST(HermJet, InverseSeries) {
  expect_diag_series(jet_inv(jet_of("1 + z1*zb1", 5)), [](int k) { return k % 2 ? -1.0 : 1.0; });
  const HermJet r = jet_inv(jet_of("pow(1 - z1*zb1, -1)", 4));
  expect_diag_series(r, [](int k) { return k == 0 ? 1.0 : (k == 1 ? -1.0 : 0.0); });
}

TEST(HermJet, InverseTimesSelfIsIdentity) {
  const Point p{Complex(0.1, -0.2), Complex(0.05, 0.1)};
  const BundleSpec H = BundleSpec::from_text(
      "h", 2, {{"2 + z1*zb1", "z1 + zb2*0.5"}, {"zb1 + z2*0.5", "1 + z2*zb2 + z1*zb1"}});
  const HermJet h = gram_jet(H, p, 3, 3);
  const HermJet e = jet_mul(h, jet_inv(h)) - HermJet::identity(p, 3, 3, 2);
  EXPECT_LT(e.max_norm(), 1e-13);
}

TEST(HermJet, ExpLogPow) {
  const HermJet zero(origin1, 3, 3, 1);
  const HermJet e = jet_func(zero, JetFunction::Exp);
  expect_diag_series(e, [](int k) { return k == 0 ? 1.0 : 0.0; });

  expect_diag_series(jet_func(jet_of("1 - z1*zb1", 5), JetFunction::Power, -2.0),
                     [](int k) { return double(k + 1); });
  // non-integral exponent: (1 - x)^{-1/2} = sum binom(2k,k) x^k / 4^k
  expect_diag_series(jet_func(jet_of("1 - z1*zb1", 4), JetFunction::Power, -0.5), [](int k) {
    double b = 1;
    for (int i = 1; i <= k; ++i) b *= double(k + i) / i;
    return b / std::pow(4.0, k);
  });

  const HermJet l = jet_func(jet_of("exp(z1*zb1)", 5), JetFunction::Log);
  expect_diag_series(l, [](int k) { return k == 1 ? 1.0 : 0.0; });
}

TEST(HermJet, LogNeedsPositiveRealPart) {
  EXPECT_THROW(jet_func(jet_of("-1 + z1*zb1"), JetFunction::Log), SingularityError);
}

TEST(HermJet, PowMatchesRepeatedProduct) {
  const HermJet a = jet_of("1 + z1 + 0.5*zb1 + z1*zb1", 4);
  HermJet p = a;
  for (int k = 1; k < 5; ++k) p = jet_mul(p, a);
  EXPECT_LT((jet_pow(a, 5) - p).max_norm(), 1e-12);
  EXPECT_LT((jet_mul(jet_pow(a, -3), jet_pow(a, 3)) - HermJet::identity(origin1, 4, 4, 1)).max_norm(), 1e-12);
}

TEST(HermJet, ExtractScalesByFactorials) {
  const HermJet h = jet_of("pow(1 - z1*zb1, -1)", 4);
  EXPECT_NEAR(std::abs(jet_extract(h, MultiIndex{0}, MultiIndex{0})(0, 0) - 1.0), 0, 1e-14);
  for (int k = 1; k <= 4; ++k) {
    const double f = std::tgamma(k + 1.0);
    EXPECT_NEAR(std::abs(h.extract(MultiIndex{k}, MultiIndex{k})(0, 0)), f * f, 1e-9 * f * f);
  }
  const HermJet e = jet_of("exp(z1*zb1)", 4);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q)
      EXPECT_NEAR(std::abs(e.extract(MultiIndex{p}, MultiIndex{q})(0, 0)), p == q ? std::tgamma(p + 1.0) : 0.0, 1e-12);
  EXPECT_THROW(h.extract(MultiIndex{5}, MultiIndex{0}), RangeError);
}

TEST(HermJet, ArithmeticMatchesSymbolicDerivatives) {
  // oracle: symbolic differentiation of the expression, then evaluation
  const Expr e = parse_kernel("exp(z1*zb2) * pow(2 + z2*zb1 + z1*zb1, -1.5) - log(3 + z1*z2)");
  const Point p{Complex(0.2, 0.1), Complex(-0.1, 0.3)};
  Point pb;
  for (auto v : p) pb.push_back(std::conj(v));
  const HermJet j = eval_herm_jet(e, p, 3, 3);
  const auto idx = IndexSet::get(2, 3);
  for (std::size_t a = 0; a < idx->size(); ++a)
    for (std::size_t b = 0; b < idx->size(); ++b) {
      Expr d = e;
      for (std::size_t k = 0; k < 2; ++k) {
        for (int r = 0; r < (*idx)[a][k]; ++r) d = differentiate(d, k + 1, false);
        for (int r = 0; r < (*idx)[b][k]; ++r) d = differentiate(d, k + 1, true);
      }
      const Complex want = evaluate(d, p, pb);
      const Complex got = j.extract((*idx)[a], (*idx)[b])(0, 0);
      EXPECT_LT(std::abs(got - want), 1e-10 * std::max(1.0, std::abs(want))) << (*idx)[a] << (*idx)[b];
    }
}

TEST(HermJet, DifferentiateAndAdjoint) {
  const HermJet h = jet_of("exp(z1*zb1 + 2*z1)", 4);
  const HermJet d = h.differentiate(0, false);
  EXPECT_EQ(d.holo_order(), 3);
  EXPECT_NEAR(std::abs(d.value()(0, 0) - 2.0), 0, 1e-14);
  const HermJet adj = h.adjoint();
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) EXPECT_NEAR(std::abs(c(adj, b, a) - std::conj(c(h, a, b))), 0, 1e-15);
}

TEST(HermJet, MismatchedCentersRejected) {
  const HermJet a = jet_of("1 + z1*zb1", 2, origin1);
  const HermJet b = jet_of("1 + z1*zb1", 2, Point{Complex(0.1)});
  EXPECT_THROW(jet_mul(a, b), DimensionError);
}

TEST(HoloJet, InverseAndAsHerm) {
  const HoloJet a = eval_holo_jet(parse_kernel("1 + z1 + z1*z1*0.5"), origin1, 4);
  const HoloJet i = inverse(a);
  const HoloJet e = a * i;
  EXPECT_NEAR(std::abs(e.coeff(0)(0, 0) - 1.0), 0, 1e-14);
  for (std::size_t k = 1; k < e.indices().size(); ++k) EXPECT_NEAR(std::abs(e.coeff(k)(0, 0)), 0, 1e-14);
  const HermJet h = a.as_herm(2);
  EXPECT_EQ(h.anti_order(), 2);
  EXPECT_EQ(h.coeff(MultiIndex{2}, MultiIndex{0})(0, 0), Complex(0.5));
  EXPECT_EQ(h.coeff(MultiIndex{1}, MultiIndex{1})(0, 0), Complex(0.0));
  const HermJet ad = a.adjoint_as_herm(1);
  EXPECT_EQ(ad.coeff(MultiIndex{0}, MultiIndex{2})(0, 0), Complex(0.5));
}

TEST(HoloJet, Series) {
  const HoloJet e = eval_holo_jet(parse_kernel("exp(z1)"), origin1, 5);
  const HoloJet g = eval_holo_jet(parse_kernel("pow(1 - z1, -1)"), origin1, 5);
  double f = 1;
  for (int k = 0; k <= 5; ++k) {
    if (k) f *= k;
    EXPECT_NEAR(std::abs(e.coeff(MultiIndex{k})(0, 0) - 1.0 / f), 0, 1e-15);
    EXPECT_NEAR(std::abs(g.coeff(MultiIndex{k})(0, 0) - 1.0), 0, 1e-14);
  }
  const HoloJet lin = eval_holo_jet(parse_kernel("1 + z1"), origin1, 2);
  EXPECT_EQ(lin.coeff(MultiIndex{0})(0, 0), Complex(1.0));
  EXPECT_EQ(lin.coeff(MultiIndex{1})(0, 0), Complex(1.0));
  EXPECT_EQ(lin.coeff(MultiIndex{2})(0, 0), Complex(0.0));
}
