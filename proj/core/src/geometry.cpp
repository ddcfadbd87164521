#include "holocontact/geometry.hpp"

#include "holocontact/errors.hpp"
#include "holocontact/linalg.hpp"
#include "holocontact/pascal.hpp"

#include <string>

namespace holocontact {

namespace {

std::size_t slot(const HermJet& H, std::size_t direction) {
  if (direction < 1 || direction > H.dimension())
    throw DimensionError("direction " + std::to_string(direction) + " outside 1.." +
                         std::to_string(H.dimension()));
  return direction - 1;
}

void need_orders(const HermJet& H, int p, int q, const char* what) {
  if (H.holo_order() < p || H.anti_order() < q)
    throw OrderError(std::string(what) + " needs Gram jet orders (" + std::to_string(p) + "," +
                     std::to_string(q) + "), have (" + std::to_string(H.holo_order()) + "," +
                     std::to_string(H.anti_order()) + ")");
}

MultiIndex e(const HermJet& H, std::size_t k, int count = 1) {
  return MultiIndex::unit(H.dimension(), k, count);
}

}  // namespace

HermJet connection(const HermJet& H, std::size_t i) {
  need_orders(H, 1, 0, "connection");
  return jet_mul(H.differentiate(slot(H, i), false), jet_inv(H));
}

HermJet curvature(const HermJet& H, std::size_t i, std::size_t j) {
  need_orders(H, 1, 1, "curvature");
  const std::size_t si = slot(H, i);
  const std::size_t sj = slot(H, j);
  const HermJet Hinv = jet_inv(H);
  const HermJet di = H.differentiate(si, false);
  const HermJet didj = di.differentiate(sj, true);
  const HermJet dj = H.differentiate(sj, true);
  return jet_mul(didj - jet_mul(jet_mul(di, Hinv), dj), Hinv);
}

HermJet cov_deriv(const HermJet& phi, const HermJet& H, std::size_t i, bool anti) {
  if (!same_center(phi.center(), H.center()) || phi.rank() != H.rank())
    throw DimensionError("bundle map and Gram jet do not match");
  const std::size_t s = slot(H, i);
  if (anti) {
    if (phi.anti_order() < 1) throw OrderError("bundle map jet has no zbar order left");
    return phi.differentiate(s, true);
  }
  if (phi.holo_order() < 1) throw OrderError("bundle map jet has no z order left");
  const HermJet G = connection(H, i);
  return phi.differentiate(s, false) - jet_mul(G, phi) + jet_mul(phi, G);
}

HermJet covariant_derivative(const HermJet& phi, const HermJet& H, std::size_t i, int r,
                             std::size_t j, int t) {
  HermJet out = phi;
  for (int k = 0; k < r; ++k) out = cov_deriv(out, H, i, false);
  for (int k = 0; k < t; ++k) out = cov_deriv(out, H, j, true);
  return out;
}

Matrix curvature_derivative(const HermJet& H, const CurvatureRequest& req) {
  if (req.r < 0 || req.t < 0) throw RangeError("covariant derivative orders must be >= 0");
  need_orders(H, req.r + 1, req.t + 1, "curvature derivative");
  // Only as many orders as the request consumes.
  const HermJet Ht = H.truncated(req.r + 1, req.t + 1);
  return covariant_derivative(curvature(Ht, req.i, req.j), Ht, req.i, req.r, req.j, req.t)
      .value();
}

Matrix adjoint_map(const Matrix& M, const Matrix& H) {
  return H * M.adjoint() * checked_inverse(H, "Gram value");
}

HermJet adjoint_jet(const HermJet& phi, const HermJet& H) {
  return jet_mul(jet_mul(H, phi.adjoint()), jet_inv(H));
}

Matrix L_tensor(const HermJet& H, std::size_t j, int l) {
  if (l < 1) throw RangeError("L tensor needs l >= 1");
  const std::size_t sj = slot(H, j);
  need_orders(H, l, 1, "L tensor");
  const MultiIndex zero(H.dimension());
  const Matrix Hinv = checked_inverse(H.value(), "Gram value");
  const Matrix dl = H.extract(e(H, 0, l), zero);
  const Matrix dlj = H.extract(e(H, 0, l), e(H, sj));
  const Matrix dj = H.extract(zero, e(H, sj));
  return (dlj - dl * Hinv * dj) * Hinv;
}

Matrix K1j_recursion(const HermJet& H, std::size_t j, int n) {
  if (n < 1) throw RangeError("K1j recursion needs n >= 1");
  need_orders(H, n, 1, "K1j recursion");
  const MultiIndex zero(H.dimension());
  const Matrix Hinv = checked_inverse(H.value(), "Gram value");
  std::vector<Matrix> J(n + 1);
  for (int k = 1; k <= n; ++k) {
    J[k] = L_tensor(H, j, k);
    for (int i = 1; i < k; ++i)
      J[k] -= double(binomial(k, i)) * H.extract(e(H, 0, i), zero) * Hinv * J[k - i];
  }
  return J[n];
}

HermJet Q_jet(const HermJet& H, std::size_t j) {
  need_orders(H, 1, 1, "Q jet");
  return connection(H, j).differentiate(0, true);
}

Matrix Q_tensor(const HermJet& H, std::size_t j, int k) {
  if (k < 1) throw RangeError("Q tensor needs k >= 1");
  const std::size_t sj = slot(H, j);
  need_orders(H, 1, k, "Q tensor");
  const MultiIndex zero(H.dimension());
  const Matrix Hinv = checked_inverse(H.value(), "Gram value");
  const Matrix djk = H.extract(e(H, sj), e(H, 0, k));
  const Matrix dj = H.extract(e(H, sj), zero);
  const Matrix dk = H.extract(zero, e(H, 0, k));
  return (djk - dj * Hinv * dk) * Hinv;
}

Matrix Q_recursion(const HermJet& H, std::size_t j, int n) {
  if (n < 0) throw RangeError("Q recursion needs n >= 0");
  need_orders(H, 1, n + 1, "Q recursion");
  const MultiIndex zero(H.dimension());
  const Matrix Hinv = checked_inverse(H.value(), "Gram value");
  std::vector<Matrix> D(n + 1);  // D[k] = dbar_1^k Q_j
  for (int k = 0; k <= n; ++k) {
    D[k] = Q_tensor(H, j, k + 1);
    for (int i = 1; i <= k; ++i)
      D[k] -= double(binomial(k + 1, i)) * D[k - i] * H.extract(zero, e(H, 0, i)) * Hinv;
  }
  return D[n];
}

NormalizedFrame normalize_frame(const HermJet& H, int n) {
  if (n < 0) throw RangeError("normalize_frame needs n >= 0");
  need_orders(H, n, 0, "normalize_frame");
  const Matrix root = hermitian_sqrt(H.value());
  const HoloJet hol = HoloJet::holomorphic_part(H).truncated(n);
  const HoloJet A = HoloJet::constant(H.center(), n, root) * inverse(hol);
  HermJet Hnorm = jet_mul(jet_mul(A.as_herm(H.anti_order()), H), A.adjoint_as_herm(H.holo_order()));

  const double tol = 1e-10 * std::max(1.0, Hnorm.max_norm());
  double defect = (Hnorm.value() - identity(H.rank())).norm();
  for (std::size_t a = 1; a < Hnorm.holo_indices().size(); ++a)
    defect = std::max(defect, Hnorm.coeff(a, 0).norm());
  for (std::size_t b = 1; b < Hnorm.anti_indices().size(); ++b)
    defect = std::max(defect, Hnorm.coeff(0, b).norm());
  if (defect > tol)
    throw NumericalError("normalized frame post-condition failed (defect " +
                         std::to_string(defect) + ")");
  return {A, std::move(Hnorm)};
}

}  // namespace holocontact
