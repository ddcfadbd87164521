#pragma once

#include "holocontact/contact.hpp"
#include "holocontact/kernel_expr.hpp"
#include "holocontact/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holocontact {

/// Finite model of the quotient H minus the functions vanishing to order n
/// at z0: the span of the kernel derivatives at z0, its Gram matrix, and the
/// compressed adjoint shifts, all in the graded-lex jet basis.
/// The kernel expression K(z, wbar) is entered with wbar written as zb.
struct QuotientModel {
  BundleSpec kernel;
  Point z0;
  int order = 0;
  Matrix gram;
  std::vector<Matrix> shifts;  // one per coordinate direction

  std::size_t dimension() const { return kernel.dimension; }
  Eigen::Index rank() const { return kernel.rank; }
};

/// Gram = full jet Gram of the kernel at z0; shift_j is the transition
/// matrix of multiplication by z_j (Leibniz rule on the coordinate jet).
QuotientModel quotient_model(const BundleSpec& kernel, const Point& z0, int n);

struct DirectEquivalence {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t nullity = 0;   // dimension of the *-closed intertwiner space
  double residual = 0.0;     // of the polar unitary, relative
  std::optional<Matrix> intertwiner;  // X with G = X Gt X^dagger, S X = X St
  std::string note;
};

/// Largest model size (rows of the Gram) the direct check accepts.
inline constexpr Eigen::Index kDirectCheckLimit = 64;

/// Whitens both Grams, solves the *-closed intertwining system through the
/// kernel of its Hermitian normal matrix, and tests the polar part of a
/// seeded random solution.
DirectEquivalence direct_unitary_equivalence(const QuotientModel& a, const QuotientModel& b,
                                             double tol, std::uint64_t seed);

struct EquivalenceResult {
  std::optional<PointReport> contact;  // absent when no contact route applies
  DirectEquivalence direct;
  bool agree = true;
};

/// Both verdicts. Rank one uses the normalized-frame decision; higher rank
/// uses `candidate` when given and otherwise skips the contact route.
EquivalenceResult unitary_equiv_check(const QuotientModel& a, const QuotientModel& b, double tol,
                                      std::uint64_t seed,
                                      const std::optional<std::vector<Expr>>& candidate = {});

}  // namespace holocontact
