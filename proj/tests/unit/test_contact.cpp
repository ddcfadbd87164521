#include "holocontact/contact.hpp"
#include "holocontact/errors.hpp"
#include "holocontact/pascal.hpp"

#include "../support/bundles.hpp"

#include <gtest/gtest.h>

using namespace holocontact;

namespace {

const Point o1{Complex(0.0)};

BundleSpec scalar(const std::string& text, std::size_t m = 1) {
  return BundleSpec::from_text(text, m, {{text}});
}

HermJet jet(const BundleSpec& b, const Point& p, int n) { return gram_jet(b, p, n + 1, n + 1); }

}  // namespace

TEST(Verdict, Classification) {
  EXPECT_EQ(classify({{"a", 1e-10, 1.0}}, 1e-8), Verdict::Verified);
  EXPECT_EQ(classify({{"a", 5e-8, 1.0}}, 1e-8), Verdict::Inconclusive);
  EXPECT_EQ(classify({{"a", 2e-7, 1.0}}, 1e-8), Verdict::Refuted);
  EXPECT_EQ(classify({{"a", 2e-7, 100.0}}, 1e-8), Verdict::Verified);
  EXPECT_EQ(classify({{"a", std::nan(""), 1.0}}, 1e-8), Verdict::Refuted);
  EXPECT_EQ(max_residual({{"a", 2.0, 1.0}, {"b", 3.0, 1.0}}), 3.0);
}

TEST(JetGram, ScalarExamples) {
  const HermJet h = gram_jet(scalar("pow(1 - z1*zb1, -1)"), o1, 2, 2);
  EXPECT_LT((jet_gram(h, 0, JetVariables::All) - identity(1)).norm(), 1e-14);
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, 1, 4;
  EXPECT_LT((jet_gram(h, 2, JetVariables::All) - d).norm(), 1e-12);
  const HermJet b = gram_jet(scalar("pow(1 - z1*zb1, -2)"), o1, 2, 2);
  d.diagonal() << 1, 2, 12;
  EXPECT_LT((jet_gram(b, 2, JetVariables::Z1Only) - d).norm(), 1e-12);
}

TEST(JetGram, PositiveDefiniteAndNested) {
  // polynomial Grams have finite-rank jet spaces, so mix in an exponential
  const BundleSpec g = BundleSpec::from_text(
      "g", 2, {{"exp(z1*zb1 + z2*zb2) + 0.09*z1*zb1", "0.06*z1*zb2"},
               {"0.06*z2*zb1", "2*exp(z1*zb1 + z2*zb2) + 0.04*z2*zb2"}});
  const HermJet h = gram_jet(g, {Complex(0.1, 0.2), Complex(-0.1)}, 3, 3);
  const Matrix G3 = jet_gram(h, 3, JetVariables::All);
  EXPECT_EQ(G3.rows(), 20);
  EXPECT_GT(min_hermitian_eigenvalue(G3), 0.0);
  const Matrix G2 = jet_gram(h, 2, JetVariables::All);
  EXPECT_LT((G3.topLeftCorner(G2.rows(), G2.cols()) - G2).norm(), 1e-13);
  EXPECT_EQ(jet_gram(h, 3, JetVariables::Z1Only).rows(), 8);
}

TEST(Pointwise, IdentityCandidate) {
  const BundleSpec b = scalar("exp(z1*zb1 + z1 + 0.5*zb1*zb1)");
  const HermJet h = jet(b, {Complex(0.2)}, 3);
  const PointReport r = pointwise_verify(h, h, HoloJet::constant({Complex(0.2)}, 3, identity(1)), 3, 1e-8);
  EXPECT_EQ(r.verdict, Verdict::Verified);
  EXPECT_LT(max_residual(r.analytic), 1e-12);
}

TEST(Pointwise, ConstructedPairVerifies) {
  const BundleSpec H = scalar("exp(z1*zb1)");
  const std::vector<Expr> A{parse_kernel("1 + z1")};
  const BundleSpec Ht = hc_test::transformed(H, A, "Ht");
  for (Complex z : {Complex(0.0), Complex(0.2, -0.1), Complex(-0.3, 0.1)}) {
    const Point p{z};
    const PointReport r =
        pointwise_verify(jet(H, p, 3), jet(Ht, p, 3), matrix_holo_jet(A, 1, p, 3), 3, 1e-8);
    EXPECT_EQ(r.verdict, Verdict::Verified) << z;
  }
}

TEST(Pointwise, BergmanOneVersusTwoRefuted) {
  const HermJet h = jet(scalar("pow(1 - z1*zb1, -1)"), o1, 1);
  const HermJet ht = jet(scalar("pow(1 - z1*zb1, -2)"), o1, 1);
  for (double theta : {0.0, 0.7, 2.0}) {
    const Matrix u = Matrix::Constant(1, 1, std::polar(1.0, theta));
    EXPECT_EQ(pointwise_verify(h, ht, HoloJet::constant(o1, 1, u), 1, 1e-8).verdict, Verdict::Refuted);
  }
  const PointReport r = pointwise_rank1_decide(h, ht, 1, 1e-8);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
}

TEST(Pointwise, FockHardyFlipsAtOrderTwo) {
  ContactProblem pr;
  pr.bundle = scalar("exp(z1*zb1)");
  pr.bundle_tilde = scalar("pow(1 - z1*zb1, -1)");
  pr.mode = ContactMode::Pointwise;
  pr.points = {o1};
  pr.order = 1;
  EXPECT_EQ(pointwise_check(pr).verdict, Verdict::Verified);
  pr.order = 2;
  EXPECT_EQ(pointwise_check(pr).verdict, Verdict::Refuted);
}

TEST(Pointwise, Rank1DecisionAgreesWithCandidate) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const BundleSpec H = hc_test::random_gram(1, 1, rng);
    const auto A = hc_test::random_frame_change(1, 1, rng);
    const BundleSpec Ht = hc_test::transformed(H, A, "Ht");
    const Point p{Complex(0.1, 0.05)};
    const HermJet h = jet(H, p, 3), ht = jet(Ht, p, 3);
    const Verdict with = pointwise_verify(h, ht, matrix_holo_jet(A, 1, p, 3), 3, 1e-8).verdict;
    EXPECT_EQ(with, Verdict::Verified);
    EXPECT_EQ(pointwise_rank1_decide(h, ht, 3, 1e-8).verdict, with);
  }
}

TEST(Pointwise, MonotoneInOrder) {
  const BundleSpec a = scalar("exp(z1*zb1)");
  const BundleSpec b = scalar("pow(1 - z1*zb1, -1)");
  for (int n = 1; n <= 3; ++n) {
    const Verdict hi = pointwise_rank1_decide(jet(a, o1, n), jet(b, o1, n), n, 1e-8).verdict;
    const Verdict lo = pointwise_rank1_decide(jet(a, o1, n - 1), jet(b, o1, n - 1), n - 1, 1e-8).verdict;
    if (hi == Verdict::Verified) EXPECT_EQ(lo, Verdict::Verified);
  }
}

TEST(Pointwise, Rank2NeedsCandidate) {
  ContactProblem pr;
  pr.bundle = BundleSpec::from_text("a", 1, {{"1", "0"}, {"0", "1"}});
  pr.bundle_tilde = pr.bundle;
  pr.mode = ContactMode::Pointwise;
  EXPECT_THROW(pointwise_check(pr), InputError);
}

TEST(Extension, IdentityAndConstructed) {
  const BundleSpec H = scalar("exp(z1*zb1 + z2*zb2)", 2);
  const Point p{Complex(0.0), Complex(0.1)};
  const auto A = extend_A_sequence(jet(H, p, 3), jet(H, p, 3), identity(1), 3);
  ASSERT_EQ(A.size(), 4u);
  EXPECT_LT((A[0] - identity(1)).norm(), 1e-15);
  for (int l = 1; l <= 3; ++l) EXPECT_LT(A[l].norm(), 1e-13);

  const BundleSpec H1 = scalar("pow(1 - z1*zb1, -1)");
  const std::vector<Expr> Ae{parse_kernel("1 + z1")};
  const BundleSpec Ht = hc_test::transformed(H1, Ae, "Ht");
  const Point q{Complex(0.2)};
  const auto B = extend_A_sequence(jet(H1, q, 3), jet(Ht, q, 3), Matrix::Constant(1, 1, 1.2), 3);
  EXPECT_LT(std::abs(B[1](0, 0) - 1.0), 1e-12);
  EXPECT_LT(B[2].norm(), 1e-12);
  EXPECT_LT(B[3].norm(), 1e-12);
  const PascalBlock L = lambda_from_jet(matrix_holo_jet(Ae, 1, q, 3));
  for (int l = 0; l <= 3; ++l) EXPECT_LT((B[l] - L.first_column[l]).norm(), 1e-12);
  // ratios do not depend on A_0
  const auto C = extend_A_sequence(jet(H1, q, 3), jet(Ht, q, 3), Matrix::Constant(1, 1, Complex(0, 2)), 3);
  for (int l = 1; l <= 3; ++l)
    EXPECT_LT(std::abs(C[l](0, 0) / C[0](0, 0) - B[l](0, 0) / B[0](0, 0)), 1e-12);
}

TEST(Extension, UniqueUnderPerturbation) {
  std::mt19937_64 rng(41);
  const BundleSpec H = hc_test::random_gram(2, 2, rng);
  const auto Ae = hc_test::random_frame_change(2, 2, rng);
  const BundleSpec Ht = hc_test::transformed(H, Ae, "Ht");
  const Point p{Complex(0.0), Complex(0.1, -0.1)};
  const HermJet h = jet(H, p, 3), ht = jet(Ht, p, 3);
  const Matrix A0 = matrix_holo_jet(Ae, 2, p, 0).value();
  auto A = extend_A_sequence(h, ht, A0, 3);
  EXPECT_EQ(classify(block_gram_isometry(h, ht, A, 3), 1e-8), Verdict::Verified);
  for (int l = 1; l <= 3; ++l) {
    auto B = A;
    B[l] += 1e-5 * hc_test::random_matrix(2, 2, rng);
    EXPECT_EQ(classify(block_gram_isometry(h, ht, B, 3), 1e-8), Verdict::Refuted) << l;
  }
}

TEST(AlongZ, HolomorphyConditionAtOrigin) {
  const BundleSpec H = scalar("exp(z1*zb1 + z2*zb2)", 2);
  const BundleSpec Ht = scalar("exp(z1*zb1 + 2*z2*zb2)", 2);
  const Point p{Complex(0.0), Complex(0.0)};
  const HermJet h = jet(H, p, 1), ht = jet(Ht, p, 1);
  const auto A = extend_A_sequence(h, ht, identity(1), 1);
  EXPECT_LT(max_residual(holomorphy_conditions(h, ht, A, 1)), 1e-14);
  // away from the origin the mismatch shows up in the tangential curvature
  ContactProblem pr;
  pr.bundle = H;
  pr.bundle_tilde = Ht;
  pr.order = 1;
  pr.points = {{Complex(0.0), Complex(0.2)}};
  EXPECT_EQ(alongZ_check(pr).verdict, Verdict::Refuted);
}

TEST(AlongZ, IdenticalBundles) {
  ContactProblem pr;
  pr.bundle = scalar("pow(1 - z1*zb1 - z2*zb2, -1)", 2);
  pr.bundle_tilde = pr.bundle;
  pr.order = 2;
  pr.points = hc_test::z_grid(2, 5);
  const ContactReport r = alongZ_check(pr);
  EXPECT_EQ(r.verdict, Verdict::Verified);
  EXPECT_TRUE(r.routes_agree);
  for (const auto& p : r.points) {
    EXPECT_LT(max_residual(p.analytic), 1e-12);
    EXPECT_LT(max_residual(p.geometric), 1e-12);
    ASSERT_TRUE(p.spot_check);
    EXPECT_EQ(*p.spot_check, Verdict::Verified);
  }
}

TEST(AlongZ, BallWeightsDiffer) {
  ContactProblem pr;
  pr.bundle = scalar("pow(1 - z1*zb1 - z2*zb2, -1)", 2);
  pr.bundle_tilde = scalar("pow(1 - z1*zb1 - z2*zb2, -2)", 2);
  pr.points = hc_test::z_grid(2, 5);
  for (int n = 1; n <= 2; ++n) {
    pr.order = n;
    const ContactReport r = alongZ_check(pr);
    EXPECT_TRUE(r.routes_agree);
    for (const auto& p : r.points) EXPECT_EQ(p.verdict, Verdict::Refuted);
  }
}

TEST(AlongZ, ConstructedRank2PairsAgree) {
  std::mt19937_64 rng(51);
  const BundleSpec H = hc_test::random_gram(2, 2, rng);
  const auto A = hc_test::random_frame_change(2, 2, rng);
  ContactProblem pr;
  pr.bundle = H;
  pr.bundle_tilde = hc_test::transformed(H, A, "Ht");
  pr.candidate = A;
  pr.points = hc_test::z_grid(2, 3);
  for (int n = 1; n <= 2; ++n) {
    pr.order = n;
    const ContactReport r = alongZ_check(pr);
    EXPECT_EQ(r.verdict, Verdict::Verified) << n;
    EXPECT_TRUE(r.routes_agree);
  }
  pr.bundle_tilde = hc_test::perturbed(pr.bundle_tilde, "Ht'");
  const ContactReport bad = alongZ_check(pr);
  EXPECT_EQ(bad.verdict, Verdict::Refuted);
  EXPECT_TRUE(bad.routes_agree);
}

TEST(AlongZ, InputValidation) {
  ContactProblem pr;
  pr.bundle = scalar("exp(z1*zb1 + z2*zb2)", 2);
  pr.bundle_tilde = pr.bundle;
  pr.points = {{Complex(0.1), Complex(0.0)}};
  EXPECT_THROW(alongZ_check(pr), InputError);
}
