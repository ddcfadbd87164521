#pragma once

#include "holocontact/jet.hpp"
#include "holocontact/types.hpp"

namespace holocontact {

// Directions i, j below are 1-based, matching z_1 .. z_m.
// Representing matrices act on the left: a bundle map Phi is stored as the
// jet of Phi(s) in the working frame s, whose Gram jet is H.

/// Jet of the connection matrix d_i H H^{-1}.
HermJet connection(const HermJet& H, std::size_t i);

/// Jet of K_{i jbar}(s) = (d_i dbar_j H - d_i H H^{-1} dbar_j H) H^{-1}.
HermJet curvature(const HermJet& H, std::size_t i, std::size_t j);

/// One covariant derivative of a bundle map:
///   z_i:    d_i Phi - G_i Phi + Phi G_i   with G_i = d_i H H^{-1}
///   zbar_i: dbar_i Phi
HermJet cov_deriv(const HermJet& phi, const HermJet& H, std::size_t i, bool anti);

/// (Phi)_{z_i^r zbar_j^t}: all z_i derivatives first, then the zbar_j ones.
HermJet covariant_derivative(const HermJet& phi, const HermJet& H, std::size_t i, int r,
                             std::size_t j, int t);

struct CurvatureRequest {
  std::size_t i = 1;
  std::size_t j = 1;
  int r = 0;
  int t = 0;
};

/// (K_{i jbar})_{z_i^r zbar_j^t} evaluated at the center.
Matrix curvature_derivative(const HermJet& H, const CurvatureRequest& req);

/// Representing matrix of the adjoint map: H M^* H^{-1}.
Matrix adjoint_map(const Matrix& M, const Matrix& H);
/// Jet of the adjoint map z -> H Phi^* H^{-1}.
HermJet adjoint_jet(const HermJet& phi, const HermJet& H);

/// L_j^l = (d_1^l dbar_j H - d_1^l H H^{-1} dbar_j H) H^{-1} at the center.
Matrix L_tensor(const HermJet& H, std::size_t j, int l);

/// J_n, the z_1^{n-1} covariant derivative of K_{1 jbar}, by the recursion
/// J_1 = L_j^1, J_n = L_j^n - sum_{i<n} binom(n,i) d_1^i H H^{-1} J_{n-i}.
Matrix K1j_recursion(const HermJet& H, std::size_t j, int n);

/// Jet of Q_j = dbar_1(d_j H H^{-1}).
HermJet Q_jet(const HermJet& H, std::size_t j);
/// Q_j^k = (dbar_1^k d_j H - d_j H H^{-1} dbar_1^k H) H^{-1} at the center.
Matrix Q_tensor(const HermJet& H, std::size_t j, int k);
/// dbar_1^n Q_j at the center by
/// dbar^n Q = Q^{n+1} - sum_{i=1}^n binom(n+1,i) (dbar^{n-i} Q) dbar^i H H^{-1}.
Matrix Q_recursion(const HermJet& H, std::size_t j, int n);

struct NormalizedFrame {
  HoloJet A;      // frame change, order n
  HermJet Hnorm;  // A H A^dagger
};

/// Normalized frame at the center: Hnorm(z0) = I and every pure holomorphic
/// (and antiholomorphic) coefficient of Hnorm of order 1..n vanishes.
/// Built as A(z) = H(z0)^{1/2} H(z, conj(z0))^{-1}; the post-condition is
/// checked and NumericalError thrown if it fails.
NormalizedFrame normalize_frame(const HermJet& H, int n);

}  // namespace holocontact
