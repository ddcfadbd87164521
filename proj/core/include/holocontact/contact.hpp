#pragma once

#include "holocontact/jet.hpp"
#include "holocontact/kernel_expr.hpp"
#include "holocontact/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace holocontact {

enum class Verdict { Verified, Refuted, Inconclusive };
std::string to_string(Verdict v);

/// One named condition. `value` is an absolute norm; `scale` the size of
/// the compared quantities.
struct Residual {
  std::string key;
  double value = 0.0;
  double scale = 0.0;
  double ratio() const;
};

/// verified: every ratio < tol; refuted: some ratio > 10 tol; else inconclusive.
Verdict classify(const std::vector<Residual>& residuals, double tol);
/// Largest absolute residual value (0 for an empty list).
double max_residual(const std::vector<Residual>& residuals);

enum class JetVariables { All, Z1Only };

/// Block Gram matrix [d^I dbar^J H(z0)] of the n-jet frame. All: multi-indices
/// |I|,|J| <= n in graded-lex order. Z1Only: I = p e_1, J = q e_1, p,q <= n.
Matrix jet_gram(const HermJet& H, int n, JetVariables variables);

struct PointReport {
  Point point;
  std::string method;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Residual> premise;    // shared by both routes
  std::vector<Residual> analytic;   // Gram / holomorphy conditions
  std::vector<Residual> geometric;  // curvature intertwining
  Verdict analytic_verdict = Verdict::Inconclusive;
  Verdict geometric_verdict = Verdict::Inconclusive;
  bool routes_agree = true;
  // Point-wise contact at this point, checked independently (along Z only).
  std::optional<Verdict> spot_check;
  std::vector<Residual> spot_residuals;
};

struct ContactReport {
  std::vector<PointReport> points;
  Verdict verdict = Verdict::Inconclusive;
  bool routes_agree = true;
};

/// Candidate intertwiner A of order >= n: jet_gram(H) = L jet_gram(Ht) L^dagger
/// with L = multi_lambda(A, n); curvature intertwining at the point is
/// reported alongside.
PointReport pointwise_verify(const HermJet& H, const HermJet& Ht, const HoloJet& A, int n,
                             double tol);

/// Rank one: compare the full n-jet Grams of both metrics in normalized frames.
PointReport pointwise_rank1_decide(const HermJet& H, const HermJet& Ht, int n, double tol);

/// A_0 .. A_n at the center by
/// A_l = d_1^l H H^{-1} A_0 - sum_{i=1}^l binom(l,i) A_{l-i} d_1^i Ht Ht^{-1}.
std::vector<Matrix> extend_A_sequence(const HermJet& H, const HermJet& Ht, const Matrix& A0,
                                      int n);

/// z_1-jet Gram identity G = Lambda Gt Lambda^dagger, one residual per block (p, q), q <= p.
std::vector<Residual> block_gram_isometry(const HermJet& H, const HermJet& Ht,
                                          const std::vector<Matrix>& A, int n);

/// L_j^l - sum_i binom(l,i) A_{l-i} Lt_j^i A_0^{-1} for 1 <= l <= n, 2 <= j <= m.
std::vector<Residual> holomorphy_conditions(const HermJet& H, const HermJet& Ht,
                                            const std::vector<Matrix>& A, int n);

/// Curvature intertwining with Psi = A_0:
///   (K_{1 1bar})_{z_1^r zbar_1^t} A_0 - A_0 (Kt_{1 1bar})_{z_1^r zbar_1^t}, r,t <= n-1
///   (K_{1 jbar})_{z_1^r} A_0 - A_0 (Kt_{1 jbar})_{z_1^r},                r <= n-1, j >= 2
std::vector<Residual> geometric_conditions(const HermJet& H, const HermJet& Ht, const Matrix& A0,
                                           int n);

enum class ContactMode { Pointwise, AlongZ };

struct ContactProblem {
  BundleSpec bundle;
  BundleSpec bundle_tilde;
  int order = 1;
  ContactMode mode = ContactMode::AlongZ;
  std::vector<Point> points;
  /// Psi as rank*rank holomorphic expressions (constants allowed); required for rank >= 2.
  std::optional<std::vector<Expr>> candidate;
  double tolerance = 1e-8;
  /// Evaluate grid points concurrently.
  bool parallel = true;
};

/// Point-wise contact at every listed point.
ContactReport pointwise_check(const ContactProblem& problem);
/// Contact along Z = {z_1 = 0} on the listed points of Z, by both routes.
ContactReport alongZ_check(const ContactProblem& problem);

}  // namespace holocontact
