#include "holocontact/pascal.hpp"

#include "holocontact/errors.hpp"
#include "holocontact/linalg.hpp"

namespace holocontact {

std::int64_t binomial(int n, int k) {
  if (n > 60) throw RangeError("binomial argument above 60");
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;  // exact at every step
  return out;
}

std::int64_t multi_binomial(const MultiIndex& I, const MultiIndex& J) {
  if (!J.dominated_by(I)) return 0;
  std::int64_t out = 1;
  for (std::size_t k = 0; k < I.dimension(); ++k) out *= binomial(I[k], J[k]);
  return out;
}

PascalBlock PascalBlock::identity(int order, Eigen::Index block_size) {
  PascalBlock b;
  b.order = order;
  b.block_size = block_size;
  b.first_column.assign(order + 1, Matrix::Zero(block_size, block_size));
  b.first_column[0].setIdentity();
  return b;
}

Matrix pascal_generator(int n, Eigen::Index l) {
  if (n < 0 || l < 1) throw DimensionError("pascal_generator needs n >= 0 and l >= 1");
  Matrix p = Matrix::Zero((n + 1) * l, (n + 1) * l);
  for (int i = 1; i <= n; ++i) p.block(i * l, (i - 1) * l, l, l) = double(i) * identity(l);
  return p;
}

Matrix pascal_expand(const PascalBlock& b) {
  const int n = b.order;
  const Eigen::Index l = b.block_size;
  if (static_cast<int>(b.first_column.size()) != n + 1)
    throw DimensionError("Pascal block column has the wrong length");
  Matrix out = Matrix::Zero((n + 1) * l, (n + 1) * l);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= i; ++j)
      out.block(i * l, j * l, l, l) = double(binomial(i, j)) * b.first_column[i - j];
  return out;
}

PascalBlock lambda_from_jet(const HoloJet& A) {
  PascalBlock b;
  b.order = A.order();
  b.block_size = A.rank();
  for (int k = 0; k <= A.order(); ++k)
    b.first_column.push_back(A.extract(MultiIndex::unit(A.dimension(), 0, k)));
  return b;
}

PascalBlock pascal_product(const PascalBlock& a, const PascalBlock& b) {
  if (a.order != b.order || a.block_size != b.block_size)
    throw DimensionError("Pascal blocks differ in shape");
  PascalBlock out;
  out.order = a.order;
  out.block_size = a.block_size;
  for (int k = 0; k <= a.order; ++k) {
    Matrix c = Matrix::Zero(a.block_size, a.block_size);
    for (int i = 0; i <= k; ++i)
      c += double(binomial(k, i)) * a.first_column[i] * b.first_column[k - i];
    out.first_column.push_back(std::move(c));
  }
  return out;
}

Matrix multi_lambda(const HoloJet& A, int n) {
  if (n > A.order()) throw OrderError("holomorphic jet order below requested Pascal order");
  const auto set = IndexSet::get(A.dimension(), n);
  const Eigen::Index l = A.rank();
  const Eigen::Index N = static_cast<Eigen::Index>(set->size());
  Matrix out = Matrix::Zero(N * l, N * l);
  for (Eigen::Index r = 0; r < N; ++r)
    for (Eigen::Index c = 0; c <= r; ++c) {
      const MultiIndex& I = (*set)[r];
      const MultiIndex& J = (*set)[c];
      const std::int64_t b = multi_binomial(I, J);
      if (b) out.block(r * l, c * l, l, l) = double(b) * A.extract(I - J);
    }
  return out;
}

Matrix pascal_map(std::size_t m, int n, Eigen::Index l, std::size_t k) {
  if (k < 1 || k > m) throw DimensionError("Pascal map direction out of range");
  const auto set = IndexSet::get(m, n);
  const Eigen::Index N = static_cast<Eigen::Index>(set->size());
  Matrix out = Matrix::Zero(N * l, N * l);
  for (Eigen::Index r = 0; r < N; ++r) {
    const MultiIndex& I = (*set)[r];
    if (I[k - 1] == 0) continue;
    const Eigen::Index c = static_cast<Eigen::Index>(set->position(I - MultiIndex::unit(m, k - 1)));
    out.block(r * l, c * l, l, l) = double(I[k - 1]) * identity(l);
  }
  return out;
}

Matrix RationalMatrix::to_complex() const {
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      out(i, j) = Complex(static_cast<double>((*this)(i, j)), 0.0);
  return out;
}

namespace {

// Rows of P X - X P = 0 with X vectorized row major.
RationalMatrix commutant_system(int n, Eigen::Index l) {
  const Eigen::Index N = (n + 1) * l;
  RationalMatrix sys(N * N, N * N);
  auto weight = [&](Eigen::Index idx) { return idx / l; };  // block number = subdiagonal weight
  for (Eigen::Index r = 0; r < N; ++r)
    for (Eigen::Index c = 0; c < N; ++c) {
      const Eigen::Index eq = r * N + c;
      if (r >= l) sys(eq, (r - l) * N + c) += Rational(weight(r));          // (P X)_{rc}
      if (c + l < N) sys(eq, r * N + (c + l)) -= Rational(weight(c + l));  // (X P)_{rc}
    }
  return sys;
}

}  // namespace

CommutantBasis commutant_basis(int n, Eigen::Index l) {
  if (n < 0 || l < 1) throw DimensionError("commutant_basis needs n >= 0 and l >= 1");
  const Eigen::Index N = (n + 1) * l;
  RationalMatrix a = commutant_system(n, l);
  const Eigen::Index rows = a.rows, cols = a.cols;

  // Reduced row echelon form; the system is sparse so zero tests dominate.
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < rows; ++r)
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (Eigen::Index c = 0; c < cols; ++c) std::swap(a(pivot, c), a(row, c));
    const Rational inv = 1 / a(row, col);
    for (Eigen::Index c = col; c < cols; ++c)
      if (!a(row, c).is_zero()) a(row, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Rational f = a(r, col);
      for (Eigen::Index c = col; c < cols; ++c)
        if (!a(row, c).is_zero()) a(r, c) -= f * a(row, c);
    }
    pivot_cols.push_back(col);
    ++row;
  }

  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;

  CommutantBasis out;
  out.order = n;
  out.block_size = l;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalMatrix q(N, N);
    q.data[f] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
      if (!a(r, f).is_zero()) q.data[pivot_cols[r]] = -a(r, f);
    out.basis.push_back(std::move(q));
  }
  return out;
}

std::size_t commutant_dimension_svd(int n, Eigen::Index l, double threshold) {
  const Matrix sys = commutant_system(n, l).to_complex();
  Eigen::JacobiSVD<Matrix> svd(sys);
  const auto& s = svd.singularValues();
  const double cut = threshold * std::max(1.0, s(0));
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cut) ++rank;
  return static_cast<std::size_t>(sys.cols()) - rank;
}

bool matches_pascal_pattern(const RationalMatrix& q, int n, Eigen::Index l) {
  const Eigen::Index N = (n + 1) * l;
  if (q.rows != N || q.cols != N) return false;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (Eigen::Index u = 0; u < l; ++u)
        for (Eigen::Index v = 0; v < l; ++v) {
          const Rational& entry = q(i * l + u, j * l + v);
          if (j > i) {
            if (!entry.is_zero()) return false;
          } else if (entry != Rational(binomial(i, j)) * q((i - j) * l + u, v)) {
            return false;
          }
        }
  return true;
}

}  // namespace holocontact
