#include "holocontact/wordcalc.hpp"

#include "holocontact/errors.hpp"
#include "holocontact/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace holocontact {

std::string to_string(const Symbol& s) {
  switch (s.family) {
    case Family::F: return "F" + std::to_string(s.index);
    case Family::G: return "G" + std::to_string(s.index);
    case Family::Ft: return "Ft" + std::to_string(s.index);
    case Family::Gt: return "Gt" + std::to_string(s.index);
    case Family::Z0: return "Z0";
    case Family::Z0inv: return "Z0^-1";
  }
  return "?";
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += '*';
    out += to_string(w[k]);
  }
  return out;
}

NCPoly NCPoly::one() { return word({}); }
NCPoly NCPoly::constant(const Rational& c) { return word({}, c); }
NCPoly NCPoly::letter(Family family, int index) { return word({Symbol{family, index}}); }

NCPoly NCPoly::word(const Word& w, const Rational& c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

void NCPoly::add_term(const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational NCPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    if (mag != 1) os << mag << (w.empty() ? "" : "*");
    if (!w.empty() || mag == 1) os << (w.empty() ? "1" : holocontact::to_string(w));
    first = false;
  }
  return os.str();
}

NCPoly& NCPoly::operator+=(const NCPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
NCPoly operator-(NCPoly a) { return a *= Rational(-1); }
NCPoly operator*(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b); }

namespace {

bool cancels(const Symbol& left, const Symbol& right) {
  return (left.family == Family::Z0 && right.family == Family::Z0inv) ||
         (left.family == Family::Z0inv && right.family == Family::Z0);
}

Word concat(const Word& a, const Word& b) {
  std::size_t i = a.size(), j = 0;
  while (i > 0 && j < b.size() && cancels(a[i - 1], b[j])) {
    --i;
    ++j;
  }
  Word out(a.begin(), a.begin() + i);
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

}  // namespace

NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out += NCPoly::word(concat(wa, wb), ca * cb);
  return out;
}

std::vector<NCPoly> build_sequences(SequenceRule rule, int length, SequenceParams params) {
  if (length < 0 || length > 12) throw RangeError("sequence length must be in 0..12");
  auto B = [](int n, int k) { return Rational(binomial(n, k)); };
  auto L = [](Family f, int i) { return NCPoly::letter(f, i); };
  const NCPoly Z0 = L(Family::Z0, 0);
  std::vector<NCPoly> s(length + 1);
  switch (rule) {
    case SequenceRule::Recur1:
    case SequenceRule::Recur1Tilde: {
      const Family f = rule == SequenceRule::Recur1 ? Family::F : Family::Ft;
      const Family g = rule == SequenceRule::Recur1 ? Family::G : Family::Gt;
      for (int l = 1; l <= length; ++l) {
        s[l] = L(f, l);
        for (int i = 1; i < l; ++i) s[l] -= B(l, i) * (L(g, i) * s[l - i]);
      }
      break;
    }
    case SequenceRule::Recur19:
      for (int l = 1; l <= length; ++l) {
        s[l] = -L(Family::G, l);
        for (int i = 1; i < l; ++i) s[l] -= B(l, i) * (L(Family::G, l - i) * s[i]);
      }
      break;
    case SequenceRule::Recur199:
    case SequenceRule::Recur199Tilde: {
      const Family g = rule == SequenceRule::Recur199 ? Family::G : Family::Gt;
      for (int l = 1; l <= length; ++l) {
        s[l] = -L(g, l);
        for (int i = 1; i < l; ++i) s[l] -= B(l, i) * (s[i] * L(g, l - i));
      }
      break;
    }
    case SequenceRule::R01:
      s[0] = Z0;
      for (int l = 1; l <= length; ++l) {
        s[l] = L(Family::G, l) * Z0;
        for (int i = 1; i <= l; ++i) s[l] -= B(l, i) * (s[l - i] * L(Family::Gt, i));
      }
      break;
    case SequenceRule::RuuuI: {
      const int n = params.n, k = params.k;
      if (k < 1 || k > n) throw RangeError("ruuu-I needs 1 <= k <= n");
      if (length > k) throw RangeError("ruuu-I sequence has only k entries");
      if (length >= 1) s[1] = NCPoly::one();
      for (int l = 2; l <= length; ++l)
        for (int i = 1; i < l; ++i) s[l] -= B(n - k + l - 1, i) * (s[l - i] * L(Family::G, i));
      break;
    }
    case SequenceRule::SplitX:
      for (int l = 1; l <= length; ++l) {
        s[l] = L(Family::G, l) * Z0;
        for (int i = 1; i < l; ++i) s[l] -= B(l, i) * (s[i] * L(Family::Gt, l - i));
      }
      break;
    case SequenceRule::SplitY:
      for (int l = 1; l <= length; ++l) {
        s[l] = -(Z0 * L(Family::Gt, l));
        for (int i = 1; i < l; ++i) s[l] -= B(l, i) * (s[i] * L(Family::Gt, l - i));
      }
      break;
  }
  return s;
}

Rational coefficient_of_word(const std::vector<int>& indices) {
  if (indices.empty()) throw RangeError("word must have at least one letter");
  int l = 0;
  Rational denom = 1;
  for (int i : indices) {
    if (i < 1) throw RangeError("G indices start at 1");
    l += i;
    for (int f = 2; f <= i; ++f) denom *= f;
  }
  Rational num = 1;
  for (int f = 2; f <= l; ++f) num *= f;
  const Rational sign = indices.size() % 2 ? -1 : 1;
  return sign * num / denom;
}

bool AppendixReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AppendixCheck& c) { return c.passed; });
}

namespace {

void compositions(int total, std::vector<int>& prefix, const std::function<void(const std::vector<int>&)>& f) {
  if (total == 0) {
    f(prefix);
    return;
  }
  for (int first = 1; first <= total; ++first) {
    prefix.push_back(first);
    compositions(total - first, prefix, f);
    prefix.pop_back();
  }
}

Word g_word(const std::vector<int>& idx) {
  Word w;
  for (int i : idx) w.push_back({Family::G, i});
  return w;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void symbolic_checks(int n_max, AppendixReport& rep) {
  auto B = [](int n, int k) { return Rational(binomial(n, k)); };
  auto L = [](Family f, int i) { return NCPoly::letter(f, i); };
  const NCPoly Z0 = L(Family::Z0, 0), Z0inv = L(Family::Z0inv, 0);

  const auto H = build_sequences(SequenceRule::Recur1, n_max);
  const auto Ht = build_sequences(SequenceRule::Recur1Tilde, n_max);
  const auto K19 = build_sequences(SequenceRule::Recur19, n_max);
  const auto K199 = build_sequences(SequenceRule::Recur199, n_max);
  const auto Kt = build_sequences(SequenceRule::Recur199Tilde, n_max);
  const auto Z = build_sequences(SequenceRule::R01, n_max);
  const auto X = build_sequences(SequenceRule::SplitX, n_max);
  const auto Y = build_sequences(SequenceRule::SplitY, n_max);

  {  // F_n + sum binom(n,i) K_i F_{n-i} = H_n, with either K recursion
    bool ok = true;
    for (const auto* K : {&K19, &K199})
      for (int n = 1; n <= n_max; ++n) {
        NCPoly lhs = L(Family::F, n);
        for (int i = 1; i < n; ++i) lhs += B(n, i) * ((*K)[i] * L(Family::F, n - i));
        ok = ok && lhs == H[n];
      }
    rep.checks.push_back({"F-to-H expansion via K sequences", ok,
                          "exact for n <= " + std::to_string(n_max) + " with both K recursions"});
  }
  {
    bool ok = true;
    for (int l = 1; l <= n_max; ++l) ok = ok && K19[l] == K199[l];
    rep.checks.push_back({"left and right K recursions agree", ok,
                          "word-for-word for l <= " + std::to_string(n_max)});
  }
  {  // closed-form coefficient against both recursions, and no extra words
    bool ok = true;
    std::size_t words = 0;
    for (int l = 1; l <= n_max; ++l) {
      std::size_t count = 0;
      std::vector<int> prefix;
      compositions(l, prefix, [&](const std::vector<int>& idx) {
        const Rational c = coefficient_of_word(idx);
        ok = ok && K19[l].coefficient(g_word(idx)) == c && K199[l].coefficient(g_word(idx)) == c;
        std::vector<int> rev(idx.rbegin(), idx.rend());
        std::vector<int> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        ok = ok && coefficient_of_word(rev) == c && coefficient_of_word(sorted) == c;
        ++count;
      });
      ok = ok && K19[l].size() == count;
      words += count;
    }
    rep.checks.push_back({"closed-form word coefficient", ok,
                          std::to_string(words) + " words, permutation invariant"});
  }
  {  // sum_i binom(n, k-i+1) I_i F_{k+1-i} = binom(n,k) H_k
    bool ok = true;
    int cases = 0;
    for (int n = 1; n <= n_max; ++n)
      for (int k = 1; k <= n; ++k) {
        const auto I = build_sequences(SequenceRule::RuuuI, k, {n, k});
        NCPoly lhs;
        for (int i = 1; i <= k; ++i) lhs += B(n, k - i + 1) * (I[i] * L(Family::F, k + 1 - i));
        ok = ok && lhs == B(n, k) * H[k];
        ++cases;
      }
    rep.checks.push_back({"truncated I-sequence identity", ok, std::to_string(cases) + " (n,k) pairs"});
  }
  {  // binom(n+1,k+1-i) binom(n-k+i,i) = binom(n+1,k+1) binom(k+1,i)
    bool ok = true;
    int cases = 0;
    for (int n = 1; n <= n_max; ++n)
      for (int k = 0; k <= n - 1; ++k)
        for (int i = 0; i <= k; ++i) {
          ok = ok && binomial(n + 1, k + 1 - i) * binomial(n - k + i, i) ==
                         binomial(n + 1, k + 1) * binomial(k + 1, i);
          ++cases;
        }
    rep.checks.push_back({"binomial product identity", ok, std::to_string(cases) + " triples"});
  }
  {  // Z = X + Y, X class A, Y class B, Y_i = Z0 Kt_i
    bool ok = true;
    for (int l = 1; l <= n_max; ++l) {
      ok = ok && Z[l] == X[l] + Y[l] && Y[l] == Z0 * Kt[l];
      for (const auto& [w, c] : X[l].terms())
        ok = ok && w.size() >= 2 && w[0].family == Family::G && w[1].family == Family::Z0;
      for (const auto& [w, c] : Y[l].terms())
        ok = ok && w.size() >= 2 && w[0].family == Family::Z0 && w[1].family == Family::Gt;
    }
    rep.checks.push_back({"Z split into class A and class B parts", ok,
                          "l <= " + std::to_string(n_max)});
  }
  {  // every word of sum binom(n,k) Z_{n-k} Ft_k Z0^-1 but Z0 Ft_n Z0^-1 is class A or B
    bool ok = true;
    for (int n = 1; n <= n_max; ++n) {
      NCPoly sum;
      for (int k = 1; k <= n; ++k) sum += B(n, k) * (Z[n - k] * L(Family::Ft, k) * Z0inv);
      const Word exception{{Family::Z0, 0}, {Family::Ft, n}, {Family::Z0inv, 0}};
      ok = ok && sum.coefficient(exception) == 1;
      for (const auto& [w, c] : sum.terms()) {
        if (w == exception) continue;
        const bool a = w.size() >= 2 && w[0].family == Family::G && w[1].family == Family::Z0;
        const bool b = w.size() >= 2 && w[0].family == Family::Z0 && w[1].family == Family::Gt;
        ok = ok && (a || b);
      }
    }
    rep.checks.push_back({"class A/B decomposition", ok, "n <= " + std::to_string(n_max)});
  }
  {  // class A part: sum binom(n,k) X_{n-k} Ft_k Z0^-1 = sum binom(n,k) G_{n-k} Z0 Ht_k Z0^-1
    bool ok = true;
    for (int n = 1; n <= n_max; ++n) {
      NCPoly lhs, rhs;
      for (int k = 1; k < n; ++k) {
        lhs += B(n, k) * (X[n - k] * L(Family::Ft, k) * Z0inv);
        rhs += B(n, k) * (L(Family::G, n - k) * Z0 * Ht[k] * Z0inv);
      }
      ok = ok && lhs == rhs;
    }
    rep.checks.push_back({"class A part collapses to G Z0 Ht Z0^-1", ok,
                          "n <= " + std::to_string(n_max)});
  }
  {  // class B part: sum binom(n,k) Y_{n-k} Ft_k Z0^-1 + Z0 Ft_n Z0^-1 = Z0 Ht_n Z0^-1
    bool ok = true;
    for (int n = 1; n <= n_max; ++n) {
      NCPoly lhs = Z0 * L(Family::Ft, n) * Z0inv;
      for (int k = 1; k < n; ++k) lhs += B(n, k) * (Y[n - k] * L(Family::Ft, k) * Z0inv);
      ok = ok && lhs == Z0 * Ht[n] * Z0inv;
    }
    rep.checks.push_back({"class B part collapses to Z0 Ht Z0^-1", ok,
                          "n <= " + std::to_string(n_max)});
  }
}

struct NumericSeqs {
  std::vector<Matrix> G, Gt, Ft, Z, X, Y;
  Matrix Z0, Z0inv;
};

double rel(const Matrix& a, const Matrix& b) { return (a - b).norm() / residual_scale(a, b); }

std::vector<Matrix> recur_H(const std::vector<Matrix>& F, const std::vector<Matrix>& G, int n) {
  std::vector<Matrix> H(n + 1);
  for (int l = 1; l <= n; ++l) {
    H[l] = F[l];
    for (int i = 1; i < l; ++i) H[l] -= double(binomial(l, i)) * G[i] * H[l - i];
  }
  return H;
}

std::vector<Matrix> condition_i(const NumericSeqs& s, int n) {
  std::vector<Matrix> F(n + 1);
  for (int l = 1; l <= n; ++l) {
    F[l] = Matrix::Zero(3, 3);
    for (int i = 1; i <= l; ++i) F[l] += double(binomial(l, i)) * s.Z[l - i] * s.Ft[i] * s.Z0inv;
  }
  return F;
}

void numeric_checks(int n, std::uint64_t seed, AppendixReport& rep) {
  std::mt19937_64 rng(seed);
  NumericSeqs s;
  s.G.resize(n + 1);
  s.Gt.resize(n + 1);
  s.Ft.resize(n + 1);
  for (int l = 1; l <= n; ++l) {
    s.G[l] = random_unit_square(3, 3, rng);
    s.Gt[l] = random_unit_square(3, 3, rng);
    s.Ft[l] = random_unit_square(3, 3, rng);
  }
  do {
    s.Z0 = random_unit_square(3, 3, rng);
  } while (!(min_singular_value(s.Z0) > 0.2));
  s.Z0inv = checked_inverse(s.Z0, "Z0");

  s.Z.assign(n + 1, Matrix());
  s.X.assign(n + 1, Matrix());
  s.Y.assign(n + 1, Matrix());
  s.Z[0] = s.Z0;
  for (int l = 1; l <= n; ++l) {
    s.Z[l] = s.G[l] * s.Z0;
    for (int i = 1; i <= l; ++i) s.Z[l] -= double(binomial(l, i)) * s.Z[l - i] * s.Gt[i];
    s.X[l] = s.G[l] * s.Z0;
    s.Y[l] = -s.Z0 * s.Gt[l];
    for (int i = 1; i < l; ++i) {
      s.X[l] -= double(binomial(l, i)) * s.X[i] * s.Gt[l - i];
      s.Y[l] -= double(binomial(l, i)) * s.Y[i] * s.Gt[l - i];
    }
  }
  const auto Ht = recur_H(s.Ft, s.Gt, n);
  std::vector<Matrix> conj(n + 1);
  for (int l = 1; l <= n; ++l) conj[l] = s.Z0 * Ht[l] * s.Z0inv;

  const double tol = 1e-8;
  {  // (i) => (ii)
    const auto F = condition_i(s, n);
    const auto H = recur_H(F, s.G, n);
    double worst = 0.0;
    for (int l = 1; l <= n; ++l) worst = std::max(worst, rel(H[l], conj[l]));
    rep.checks.push_back({"conjugation lemma (i) implies (ii), 3x3 random", worst < tol,
                          "max relative residual " + sci(worst)});

    double worst145 = 0.0, worst146 = 0.0;
    for (int m = 1; m <= n; ++m) {
      Matrix a = F[m], b = s.Z0 * s.Ft[m] * s.Z0inv;
      for (int k = 1; k < m; ++k) {
        a -= double(binomial(m, k)) * s.X[m - k] * s.Ft[k] * s.Z0inv;
        b += double(binomial(m, k)) * s.Y[m - k] * s.Ft[k] * s.Z0inv;
      }
      worst145 = std::max(worst145, rel(a, H[m]));
      worst146 = std::max(worst146, rel(b, conj[m]));
    }
    rep.checks.push_back({"class A half of the induction step, numeric", worst145 < tol,
                          "max relative residual " + sci(worst145)});
    rep.checks.push_back({"class B half of the induction step, numeric", worst146 < tol,
                          "max relative residual " + sci(worst146)});

    // Perturbing any single F_p must break (ii) at level p.
    bool all_fail = true;
    double weakest = 1e300;
    for (int p = 1; p <= n; ++p) {
      auto Fp = F;
      // H_p is F_p plus terms free of F_p, so this moves H_p by 1e-3 relative
      const Matrix d = random_unit_square(3, 3, rng);
      Fp[p] += (1e-3 * std::max(1.0, conj[p].norm()) / d.norm()) * d;
      const auto Hp = recur_H(Fp, s.G, n);
      const double r = rel(Hp[p], conj[p]);
      weakest = std::min(weakest, r);
      all_fail = all_fail && r > 100.0 * tol;
    }
    rep.checks.push_back({"conjugation lemma fails under perturbation", all_fail,
                          "smallest perturbed residual " + sci(weakest)});
  }
  {  // (ii) => (i)
    std::vector<Matrix> F(n + 1);
    for (int l = 1; l <= n; ++l) {
      F[l] = conj[l];
      for (int i = 1; i < l; ++i) F[l] += double(binomial(l, i)) * s.G[i] * conj[l - i];
    }
    const auto Fi = condition_i(s, n);
    double worst = 0.0;
    for (int l = 1; l <= n; ++l) worst = std::max(worst, rel(F[l], Fi[l]));
    rep.checks.push_back({"conjugation lemma (ii) implies (i), 3x3 random", worst < tol,
                          "max relative residual " + sci(worst)});
  }
}

}  // namespace

AppendixReport verify_appendix(int n_max, std::uint64_t seed) {
  if (n_max < 1 || n_max > 7) throw RangeError("verify_appendix needs 1 <= n_max <= 7");
  AppendixReport rep;
  rep.n_max = n_max;
  rep.seed = seed;
  symbolic_checks(n_max, rep);
  numeric_checks(n_max, seed, rep);
  return rep;
}

}  // namespace holocontact
