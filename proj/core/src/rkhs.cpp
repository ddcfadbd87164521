#include "holocontact/rkhs.hpp"

#include "holocontact/errors.hpp"
#include "holocontact/linalg.hpp"
#include "holocontact/pascal.hpp"

#include <random>
#include <unsupported/Eigen/KroneckerProduct>

namespace holocontact {

QuotientModel quotient_model(const BundleSpec& kernel, const Point& z0, int n) {
  if (n < 0) throw RangeError("quotient order must be >= 0");
  QuotientModel model;
  model.kernel = kernel;
  model.z0 = z0;
  model.order = n;
  const HermJet H = gram_jet(kernel, z0, n, n);
  model.gram = jet_gram(H, n, JetVariables::All);
  if (!(min_hermitian_eigenvalue(model.gram) > 0.0))
    throw SingularityError("kernel '" + kernel.label + "' gives a singular jet Gram at z0");
  const Eigen::Index l = kernel.rank;
  for (std::size_t j = 0; j < kernel.dimension; ++j) {
    const HermJet zj = HermJet::coordinate(z0, n, 0, j, false);
    HoloJet coord(z0, n, l);
    for (std::size_t a = 0; a < coord.indices().size(); ++a)
      coord.coeff(a) = zj.coeff(a, 0)(0, 0) * identity(l);
    model.shifts.push_back(multi_lambda(coord, n));
  }
  return model;
}

namespace {

Matrix whiten(const Matrix& shift, const Matrix& L) {
  // L^{-1} S L
  return L.triangularView<Eigen::Lower>().solve(shift * L);
}

}  // namespace

DirectEquivalence direct_unitary_equivalence(const QuotientModel& a, const QuotientModel& b,
                                             double tol, std::uint64_t seed) {
  if (a.dimension() != b.dimension() || a.rank() != b.rank() || a.order != b.order ||
      !same_center(a.z0, b.z0))
    throw DimensionError("quotient models differ in shape or base point");
  const Eigen::Index N = a.gram.rows();
  DirectEquivalence out;
  if (N > kDirectCheckLimit) {
    out.note = "model too large for the direct check";
    return out;
  }
  Eigen::LLT<Matrix> lla(a.gram), llb(b.gram);
  if (lla.info() != Eigen::Success || llb.info() != Eigen::Success)
    throw SingularityError("model Gram is not positive definite");
  const Matrix La = lla.matrixL(), Lb = llb.matrixL();

  // Rows: (I (x) M - Mt^T (x) I) vec Y = 0 for each M and its adjoint.
  const Matrix I = identity(N);
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < a.shifts.size(); ++j) {
    const Matrix M = whiten(a.shifts[j], La);
    const Matrix Mt = whiten(b.shifts[j], Lb);
    for (int adj = 0; adj < 2; ++adj) {
      const Matrix X = adj ? Matrix(M.adjoint()) : M;
      const Matrix Xt = adj ? Matrix(Mt.adjoint()) : Mt;
      blocks.push_back(Eigen::kroneckerProduct(I, X).eval() -
                       Eigen::kroneckerProduct(Xt.transpose(), I).eval());
    }
  }
  Matrix system(blocks.size() * N * N, N * N);
  for (std::size_t k = 0; k < blocks.size(); ++k) system.middleRows(k * N * N, N * N) = blocks[k];

  const Matrix normal = system.adjoint() * system;
  Eigen::SelfAdjointEigenSolver<Matrix> es(normal);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed on intertwining system");
  const double top = std::max(1.0, es.eigenvalues().maxCoeff());
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) < 1e-12 * top) kernel.push_back(k);
  out.nullity = kernel.size();
  if (kernel.empty()) {
    out.verdict = Verdict::Refuted;
    out.note = "no nonzero intertwiner";
    return out;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N * N);
  for (auto k : kernel) v += Complex(g(rng), g(rng)) * es.eigenvectors().col(k);
  const Matrix Y = Eigen::Map<const Matrix>(v.data(), N, N);
  if (!(min_singular_value(Y) > 1e-8 * std::max(1.0, Y.norm()))) {
    out.verdict = Verdict::Refuted;
    out.note = "intertwiners exist but none is invertible";
    return out;
  }
  const Matrix U = Y * hermitian_inv_sqrt(Y.adjoint() * Y);
  double res = (U * U.adjoint() - I).norm();
  for (std::size_t j = 0; j < a.shifts.size(); ++j) {
    const Matrix M = whiten(a.shifts[j], La);
    const Matrix Mt = whiten(b.shifts[j], Lb);
    res = std::max(res, (M * U - U * Mt).norm() / residual_scale(M, Mt));
  }
  out.residual = res;
  out.intertwiner = La * U * Lb.triangularView<Eigen::Lower>().solve(I);
  out.verdict = res < tol ? Verdict::Verified : (res > 10 * tol ? Verdict::Refuted : Verdict::Inconclusive);
  out.note = out.verdict == Verdict::Verified ? "unitary intertwiner found" : "polar part fails to intertwine";
  return out;
}

EquivalenceResult unitary_equiv_check(const QuotientModel& a, const QuotientModel& b, double tol,
                                      std::uint64_t seed,
                                      const std::optional<std::vector<Expr>>& candidate) {
  EquivalenceResult out;
  out.direct = direct_unitary_equivalence(a, b, tol, seed);
  const int n = a.order;
  const HermJet H = gram_jet(a.kernel, a.z0, n, n);
  const HermJet Ht = gram_jet(b.kernel, b.z0, n, n);
  if (a.rank() == 1 && !candidate)
    out.contact = pointwise_rank1_decide(H, Ht, n, tol);
  else if (candidate)
    out.contact = pointwise_verify(H, Ht, matrix_holo_jet(*candidate, a.rank(), a.z0, n), n, tol);
  const bool direct_ran = a.gram.rows() <= kDirectCheckLimit;
  out.agree = !out.contact || !direct_ran || out.contact->verdict == out.direct.verdict;
  return out;
}

}  // namespace holocontact
