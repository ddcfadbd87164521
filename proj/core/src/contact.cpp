#include "holocontact/contact.hpp"

#include "holocontact/errors.hpp"
#include "holocontact/geometry.hpp"
#include "holocontact/linalg.hpp"
#include "holocontact/pascal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace holocontact {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double Residual::ratio() const { return value / std::max(1.0, scale); }

Verdict classify(const std::vector<Residual>& residuals, double tol) {
  bool all_small = true;
  for (const auto& r : residuals) {
    const double q = r.ratio();
    if (!(q <= 10.0 * tol)) return Verdict::Refuted;  // NaN refutes too
    if (!(q < tol)) all_small = false;
  }
  return all_small ? Verdict::Verified : Verdict::Inconclusive;
}

double max_residual(const std::vector<Residual>& residuals) {
  double out = 0.0;
  for (const auto& r : residuals) out = std::max(out, r.value);
  return out;
}

namespace {

std::string tagged(const std::string& name, std::initializer_list<std::pair<const char*, int>> kv) {
  std::ostringstream os;
  os << name << '(';
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

Residual compare(std::string key, const Matrix& lhs, const Matrix& rhs) {
  return {std::move(key), (lhs - rhs).norm(), residual_scale(lhs, rhs)};
}

void check_pair(const HermJet& H, const HermJet& Ht) {
  if (!same_center(H.center(), Ht.center())) throw DimensionError("Gram jets have different centers");
  if (H.rank() != Ht.rank()) throw DimensionError("bundles have different ranks");
}

MultiIndex z1(const HermJet& H, int k) { return MultiIndex::unit(H.dimension(), 0, k); }

// Residuals of G - Gt grouped by total degrees (|I|, |J|), |J| <= |I|.
std::vector<Residual> gram_residuals(const Matrix& G, const Matrix& Gt, std::size_t m, int n,
                                     Eigen::Index l) {
  const auto set = IndexSet::get(m, n);
  std::vector<Residual> out;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= p; ++q) {
      const Eigen::Index r0 = static_cast<Eigen::Index>(set->prefix_size(p - 1)) * l;
      const Eigen::Index c0 = static_cast<Eigen::Index>(set->prefix_size(q - 1)) * l;
      const Eigen::Index rs = static_cast<Eigen::Index>(set->prefix_size(p)) * l - r0;
      const Eigen::Index cs = static_cast<Eigen::Index>(set->prefix_size(q)) * l - c0;
      out.push_back(compare(tagged("jet-gram", {{"p", p}, {"q", q}}), G.block(r0, c0, rs, cs),
                            Gt.block(r0, c0, rs, cs)));
    }
  return out;
}

std::vector<Residual> curvature_residuals(const HermJet& H, const HermJet& Ht, const Matrix& A0) {
  std::vector<Residual> out;
  const std::size_t m = H.dimension();
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const Matrix K = curvature_derivative(H, {i, j, 0, 0});
      const Matrix Kt = curvature_derivative(Ht, {i, j, 0, 0});
      out.push_back(compare(tagged("curvature-intertwine", {{"i", int(i)}, {"j", int(j)}}),
                            K * A0, A0 * Kt));
    }
  return out;
}

void finish_single_route(PointReport& r, double tol) {
  std::vector<Residual> all = r.premise;
  all.insert(all.end(), r.analytic.begin(), r.analytic.end());
  r.analytic_verdict = classify(all, tol);
  r.geometric_verdict = r.analytic_verdict;
  r.routes_agree = true;
  r.verdict = r.analytic_verdict;
}

}  // namespace

Matrix jet_gram(const HermJet& H, int n, JetVariables variables) {
  if (n < 0) throw RangeError("jet_gram needs n >= 0");
  if (H.holo_order() < n || H.anti_order() < n)
    throw OrderError("jet_gram needs Gram jet orders >= n");
  const Eigen::Index l = H.rank();
  if (variables == JetVariables::Z1Only) {
    Matrix G(l * (n + 1), l * (n + 1));
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) G.block(p * l, q * l, l, l) = H.extract(z1(H, p), z1(H, q));
    return G;
  }
  const auto set = IndexSet::get(H.dimension(), n);
  const Eigen::Index N = static_cast<Eigen::Index>(set->size());
  Matrix G(l * N, l * N);
  for (Eigen::Index r = 0; r < N; ++r)
    for (Eigen::Index c = 0; c < N; ++c) G.block(r * l, c * l, l, l) = H.extract((*set)[r], (*set)[c]);
  return G;
}

PointReport pointwise_verify(const HermJet& H, const HermJet& Ht, const HoloJet& A, int n,
                             double tol) {
  check_pair(H, Ht);
  if (A.order() < n) throw OrderError("candidate jet order below contact order");
  if (A.rank() != H.rank()) throw DimensionError("candidate rank does not match bundles");
  PointReport r;
  r.point = H.center();
  r.method = "candidate";
  const Matrix L = multi_lambda(A, n);
  const Matrix G = jet_gram(H, n, JetVariables::All);
  const Matrix Gt = L * jet_gram(Ht, n, JetVariables::All) * L.adjoint();
  r.analytic = gram_residuals(G, Gt, H.dimension(), n, H.rank());
  if (n >= 1) {
    const auto k = curvature_residuals(H.truncated(1, 1), Ht.truncated(1, 1), A.value());
    r.analytic.insert(r.analytic.end(), k.begin(), k.end());
  }
  finish_single_route(r, tol);
  return r;
}

PointReport pointwise_rank1_decide(const HermJet& H, const HermJet& Ht, int n, double tol) {
  check_pair(H, Ht);
  if (H.rank() != 1) throw DimensionError("rank-one decision needs line bundles");
  PointReport r;
  r.point = H.center();
  r.method = "rank1-normalized";
  const HermJet N = normalize_frame(H.truncated(n, n), n).Hnorm;
  const HermJet Nt = normalize_frame(Ht.truncated(n, n), n).Hnorm;
  r.analytic = gram_residuals(jet_gram(N, n, JetVariables::All), jet_gram(Nt, n, JetVariables::All),
                              H.dimension(), n, 1);
  if (n >= 1) {
    const auto k = curvature_residuals(H.truncated(1, 1), Ht.truncated(1, 1), identity(1));
    r.analytic.insert(r.analytic.end(), k.begin(), k.end());
  }
  finish_single_route(r, tol);
  return r;
}

std::vector<Matrix> extend_A_sequence(const HermJet& H, const HermJet& Ht, const Matrix& A0, int n) {
  check_pair(H, Ht);
  if (n < 0) throw RangeError("extension order must be >= 0");
  if (H.holo_order() < n || Ht.holo_order() < n) throw OrderError("extension needs z_1 order >= n");
  const MultiIndex zero(H.dimension());
  const Matrix Hinv = checked_inverse(H.value(), "Gram value");
  const Matrix Htinv = checked_inverse(Ht.value(), "Gram value of the second bundle");
  std::vector<Matrix> A{A0};
  for (int l = 1; l <= n; ++l) {
    Matrix next = H.extract(z1(H, l), zero) * Hinv * A0;
    for (int i = 1; i <= l; ++i)
      next -= double(binomial(l, i)) * A[l - i] * Ht.extract(z1(Ht, i), zero) * Htinv;
    A.push_back(std::move(next));
  }
  return A;
}

std::vector<Residual> block_gram_isometry(const HermJet& H, const HermJet& Ht,
                                          const std::vector<Matrix>& A, int n) {
  check_pair(H, Ht);
  if (static_cast<int>(A.size()) < n + 1) throw OrderError("A sequence shorter than n + 1");
  const Eigen::Index l = H.rank();
  PascalBlock block;
  block.order = n;
  block.block_size = l;
  block.first_column.assign(A.begin(), A.begin() + n + 1);
  const Matrix L = pascal_expand(block);
  const Matrix G = jet_gram(H, n, JetVariables::Z1Only);
  const Matrix Gt = L * jet_gram(Ht, n, JetVariables::Z1Only) * L.adjoint();
  std::vector<Residual> out;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= p; ++q)
      out.push_back(compare(tagged("block-gram-isometry", {{"p", p}, {"q", q}}),
                            G.block(p * l, q * l, l, l), Gt.block(p * l, q * l, l, l)));
  return out;
}

std::vector<Residual> holomorphy_conditions(const HermJet& H, const HermJet& Ht,
                                            const std::vector<Matrix>& A, int n) {
  check_pair(H, Ht);
  std::vector<Residual> out;
  if (H.dimension() < 2 || n < 1) return out;
  const Matrix A0inv = checked_inverse(A.at(0), "A_0");
  for (std::size_t j = 2; j <= H.dimension(); ++j)
    for (int l = 1; l <= n; ++l) {
      Matrix rhs = Matrix::Zero(H.rank(), H.rank());
      for (int i = 1; i <= l; ++i)
        rhs += double(binomial(l, i)) * A.at(l - i) * L_tensor(Ht, j, i) * A0inv;
      out.push_back(
          compare(tagged("holomorphy", {{"j", int(j)}, {"l", l}}), L_tensor(H, j, l), rhs));
    }
  return out;
}

std::vector<Residual> geometric_conditions(const HermJet& H, const HermJet& Ht, const Matrix& A0,
                                           int n) {
  check_pair(H, Ht);
  std::vector<Residual> out;
  for (int r = 0; r < n; ++r)
    for (int t = 0; t < n; ++t) {
      const Matrix K = curvature_derivative(H, {1, 1, r, t});
      const Matrix Kt = curvature_derivative(Ht, {1, 1, r, t});
      out.push_back(compare(tagged("k11-intertwine", {{"r", r}, {"t", t}}), K * A0, A0 * Kt));
    }
  for (std::size_t j = 2; j <= H.dimension(); ++j)
    for (int r = 0; r < n; ++r) {
      const Matrix K = curvature_derivative(H, {1, j, r, 0});
      const Matrix Kt = curvature_derivative(Ht, {1, j, r, 0});
      out.push_back(compare(tagged("k1j-intertwine", {{"j", int(j)}, {"r", r}}), K * A0, A0 * Kt));
    }
  return out;
}

namespace {

void check_problem(const ContactProblem& p) {
  if (p.bundle.dimension != p.bundle_tilde.dimension)
    throw DimensionError("bundles live over different dimensions");
  if (p.bundle.rank != p.bundle_tilde.rank) throw DimensionError("bundles have different ranks");
  if (p.order < 1) throw InputError("contact order must be >= 1");
  if (!(p.tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (p.points.empty()) throw InputError("no points to check");
  for (const auto& z : p.points)
    if (z.size() != p.bundle.dimension) throw DimensionError("point dimension does not match bundles");
  if (p.candidate && static_cast<Eigen::Index>(p.candidate->size()) != p.bundle.rank * p.bundle.rank)
    throw DimensionError("candidate needs rank*rank entries");
}

template <class F>
std::vector<PointReport> map_points(const ContactProblem& p, F&& f) {
  std::vector<PointReport> out;
  if (!p.parallel || p.points.size() == 1) {
    for (const auto& z : p.points) out.push_back(f(z));
    return out;
  }
  std::vector<std::future<PointReport>> jobs;
  for (const auto& z : p.points) jobs.push_back(std::async(std::launch::async, f, z));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

ContactReport assemble(std::vector<PointReport> points) {
  ContactReport rep;
  rep.points = std::move(points);
  bool all_verified = true, any_refuted = false;
  for (const auto& p : rep.points) {
    all_verified = all_verified && p.verdict == Verdict::Verified;
    any_refuted = any_refuted || p.verdict == Verdict::Refuted;
    rep.routes_agree = rep.routes_agree && p.routes_agree;
  }
  rep.verdict = any_refuted ? Verdict::Refuted
                            : (all_verified ? Verdict::Verified : Verdict::Inconclusive);
  return rep;
}

// Holomorphic jet A(z_1, z') = sum_k z_1^k / k! A_k(z'), where each A_k is the
// z'-holomorphic part of the recursion run in jet arithmetic.
HoloJet assemble_extension(const HermJet& H, const HermJet& Ht, const HoloJet& A0, int n) {
  const std::size_t m = H.dimension();
  const int q = std::min(H.anti_order(), Ht.anti_order());
  const HermJet Hinv = jet_inv(H);
  const HermJet Htinv = jet_inv(Ht);
  std::vector<HermJet> dH{H}, dHt{Ht};
  for (int k = 1; k <= n; ++k) {
    dH.push_back(dH.back().differentiate(0, false));
    dHt.push_back(dHt.back().differentiate(0, false));
  }
  std::vector<HermJet> A{A0.as_herm(q)};
  for (int l = 1; l <= n; ++l) {
    HermJet next = jet_mul(jet_mul(dH[l], Hinv), A[0]);
    for (int i = 1; i <= l; ++i)
      next -= double(binomial(l, i)) * jet_mul(A[l - i], jet_mul(dHt[i], Htinv));
    A.push_back(std::move(next));
  }
  HoloJet out(H.center(), n, H.rank());
  const IndexSet& set = out.indices();
  for (std::size_t pos = 0; pos < set.size(); ++pos) {
    const MultiIndex& idx = set[pos];
    const int k = idx[0];
    std::vector<int> tangential = idx.components();
    tangential[0] = 0;
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    out.coeff(pos) = A[k].coeff(MultiIndex(tangential), MultiIndex(m)) / fact;
  }
  return out;
}

PointReport along_point(const ContactProblem& p, const Point& z) {
  const int n = p.order;
  const Eigen::Index l = p.bundle.rank;
  const std::size_t m = p.bundle.dimension;
  const HermJet H = gram_jet(p.bundle, z, n + 1, n + 1);
  const HermJet Ht = gram_jet(p.bundle_tilde, z, n + 1, n + 1);

  PointReport r;
  r.point = z;
  Matrix A0;
  std::optional<HoloJet> A0jet;
  if (p.candidate) {
    A0jet = matrix_holo_jet(*p.candidate, l, z, n);
    A0 = A0jet->value();
    r.method = "along-z/candidate";
  } else {
    // Line bundles: |A_0|^2 = H / Ht; the phase never enters the conditions.
    const Complex ratio = H.value()(0, 0) / Ht.value()(0, 0);
    A0 = Matrix::Constant(1, 1, std::sqrt(std::max(ratio.real(), 0.0)));
    r.method = "along-z/rank1-auto";
  }

  r.premise.push_back(compare("psi-isometry", H.value(), A0 * Ht.value() * A0.adjoint()));
  if (!p.candidate)
    for (std::size_t i = 2; i <= m; ++i)
      for (std::size_t j = 2; j <= m; ++j)
        r.premise.push_back(compare(tagged("psi-tangential", {{"i", int(i)}, {"j", int(j)}}),
                                    curvature_derivative(H, {i, j, 0, 0}),
                                    curvature_derivative(Ht, {i, j, 0, 0})));

  const bool invertible = min_singular_value(A0) > 1e-12 * std::max(1.0, A0.norm());
  if (invertible) {
    const auto A = extend_A_sequence(H, Ht, A0, n);
    r.analytic = block_gram_isometry(H, Ht, A, n);
    const auto hol = holomorphy_conditions(H, Ht, A, n);
    r.analytic.insert(r.analytic.end(), hol.begin(), hol.end());
  }
  r.geometric = geometric_conditions(H, Ht, A0, n);

  std::vector<Residual> a = r.premise, g = r.premise;
  a.insert(a.end(), r.analytic.begin(), r.analytic.end());
  g.insert(g.end(), r.geometric.begin(), r.geometric.end());
  r.analytic_verdict = invertible ? classify(a, p.tolerance) : Verdict::Refuted;
  r.geometric_verdict = classify(g, p.tolerance);
  r.routes_agree = r.analytic_verdict == r.geometric_verdict;
  r.verdict = r.routes_agree ? r.analytic_verdict : Verdict::Inconclusive;

  if (l == 1) {
    const PointReport spot = pointwise_rank1_decide(H, Ht, n, p.tolerance);
    r.spot_check = spot.verdict;
    r.spot_residuals = spot.analytic;
  } else if (invertible) {
    const HoloJet A = assemble_extension(H, Ht, *A0jet, n);
    const PointReport spot = pointwise_verify(H, Ht, A, n, p.tolerance);
    r.spot_check = spot.verdict;
    r.spot_residuals = spot.analytic;
  }
  return r;
}

}  // namespace

ContactReport pointwise_check(const ContactProblem& problem) {
  check_problem(problem);
  if (!problem.candidate && problem.bundle.rank != 1)
    throw InputError("rank >= 2 point-wise checks need a candidate");
  const int n = problem.order;
  return assemble(map_points(problem, [&](const Point& z) {
    const HermJet H = gram_jet(problem.bundle, z, n, n);
    const HermJet Ht = gram_jet(problem.bundle_tilde, z, n, n);
    if (problem.candidate)
      return pointwise_verify(H, Ht, matrix_holo_jet(*problem.candidate, H.rank(), z, n), n,
                              problem.tolerance);
    return pointwise_rank1_decide(H, Ht, n, problem.tolerance);
  }));
}

ContactReport alongZ_check(const ContactProblem& problem) {
  check_problem(problem);
  if (!problem.candidate && problem.bundle.rank != 1)
    throw InputError("rank >= 2 contact along Z needs a candidate A_0");
  for (const auto& z : problem.points)
    if (std::abs(z[0]) > 1e-14) throw InputError("along-Z points must have z_1 = 0");
  return assemble(map_points(problem, [&](const Point& z) { return along_point(problem, z); }));
}

}  // namespace holocontact
