#pragma once

#include "holocontact/pascal.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

namespace holocontact {

/// Letter families. Ft and Gt are the tilde sequences.
enum class Family { F, G, Ft, Gt, Z0, Z0inv };

struct Symbol {
  Family family = Family::F;
  int index = 0;  // >= 1 for F/G families, 0 for Z0 and Z0inv
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Word = std::vector<Symbol>;

std::string to_string(const Symbol& s);
std::string to_string(const Word& w);

/// Exact noncommutative polynomial: words with rational coefficients.
/// Z0 Z0inv and Z0inv Z0 cancel on multiplication; no zero terms are stored.
class NCPoly {
 public:
  NCPoly() = default;
  static NCPoly one();
  static NCPoly constant(const Rational& c);
  static NCPoly letter(Family family, int index = 0);
  static NCPoly word(const Word& w, const Rational& c = 1);

  const std::map<Word, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const Word& w) const;
  std::string to_string() const;

  NCPoly& operator+=(const NCPoly& other);
  NCPoly& operator-=(const NCPoly& other);
  NCPoly& operator*=(const Rational& c);

  friend bool operator==(const NCPoly&, const NCPoly&) = default;

 private:
  void add_term(const Word& w, const Rational& c);
  std::map<Word, Rational> terms_;
};

NCPoly operator+(NCPoly a, const NCPoly& b);
NCPoly operator-(NCPoly a, const NCPoly& b);
NCPoly operator-(NCPoly a);
// Template so unrelated operands (e.g. Eigen expressions) never probe
// conversions to Rational.
template <class R, std::enable_if_t<std::is_same_v<R, Rational>, int> = 0>
NCPoly operator*(const R& c, NCPoly a) {
  return a *= c;
}
NCPoly operator*(const NCPoly& a, const NCPoly& b);
/// Concatenation product with Z0 cancellation at the junction.
NCPoly nc_mul(const NCPoly& a, const NCPoly& b);

enum class SequenceRule {
  Recur1,       // H_1 = F_1, H_l = F_l - sum_{i<l} binom(l,i) G_i H_{l-i}
  Recur1Tilde,  // same with Ft, Gt
  Recur19,      // K_1 = -G_1, K_l = -G_l - sum_{i<l} binom(l,i) G_{l-i} K_i
  Recur199,     // K_l = -G_l - sum_{i<l} binom(l,i) K_i G_{l-i}
  Recur199Tilde,
  R01,          // Z_l = G_l Z0 - sum_{i=1}^l binom(l,i) Z_{l-i} Gt_i, Z_0 = Z0
  RuuuI,        // I_1 = 1, I_l = -sum_{i<l} binom(n-k+l-1, i) I_{l-i} G_i
  SplitX,       // X_1 = G_1 Z0, X_l = G_l Z0 - sum_{i<l} binom(l,i) X_i Gt_{l-i}
  SplitY,       // Y_1 = -Z0 Gt_1, Y_l = -Z0 Gt_l - sum_{i<l} binom(l,i) Y_i Gt_{l-i}
};

struct SequenceParams {
  int n = 0;  // RuuuI only
  int k = 0;  // RuuuI only
};

/// Entries 1..length; entry 0 is Z0 for R01 and zero otherwise.
std::vector<NCPoly> build_sequences(SequenceRule rule, int length, SequenceParams params = {});

/// Closed form (-1)^k l! / (i_1! ... i_k!) for the word G_{i_1} ... G_{i_k}.
Rational coefficient_of_word(const std::vector<int>& indices);

struct AppendixCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AppendixReport {
  int n_max = 0;
  std::uint64_t seed = 0;
  std::vector<AppendixCheck> checks;
  bool all_passed() const;
};

/// Exact identities for weights <= n_max plus the randomized 3x3 substitution
/// test of the Z_0 conjugation lemma. n_max <= 7.
AppendixReport verify_appendix(int n_max, std::uint64_t seed = 1);

}  // namespace holocontact
