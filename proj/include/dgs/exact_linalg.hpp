#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dgs/numeric.hpp"

namespace dgs {

/// Exact determinant by fraction-free (Bareiss) elimination.
Int bareiss_det(IntMatrix m);

/// Rank over the rationals, computed by fraction-free elimination with
/// row/column pivot skipping (no fractions are ever formed).
Index rank_rational(IntMatrix m);

/// Rank over F_p. p must be prime.
Index rank_mod_p(const IntMatrix& m, const Int& p);

/// Canonical basis of the right kernel of m over F_p, derived from the
/// reduced row echelon form (unit leading entries, entries in [0, p)).
/// One basis vector per free column, ordered by free-column index.
std::vector<IntVector> nullspace_mod_p(const IntMatrix& m, const Int& p);

/// Primitive integer basis of the rational right kernel (denominators
/// cleared, content divided out, first nonzero entry positive).
std::vector<IntVector> nullspace_rational(const IntMatrix& m);

/// One exact rational solution of a x = b (free variables set to zero),
/// or nullopt when the system is inconsistent.
std::optional<RatVector> solve_rational(const IntMatrix& a, const IntVector& b);

/// Invariant factors d_1 | d_2 | ... (all nonnegative, zeros trailing) and,
/// optionally, unimodular U (rows x rows) and V (cols x cols) with
/// U * M * V = diag(d).
struct SnfResult {
  Index rows = 0;
  Index cols = 0;
  std::vector<Int> invariant_factors;
  std::optional<std::pair<IntMatrix, IntMatrix>> transforms;

  IntMatrix diagonal_matrix() const;
};

SnfResult smith_normal_form(const IntMatrix& m, bool with_transforms = false);

/// The facts readable off the invariant factors of a square matrix:
/// |det|, rank over F_p, the guaranteed power of p dividing the
/// determinant, and whether M x = 0 (mod p^2) has a solution x != 0 (mod p).
struct SnfQueries {
  Int det_abs;
  Index p_rank = 0;
  Int det_p_power_bound;
  bool has_p2_kernel_vector = false;
};

SnfQueries snf_queries(const SnfResult& s, const Int& p);

/// Monic characteristic polynomial of m, exact integer coefficients,
/// returned as c[0..n] with p(x) = sum c[k] x^k and c[n] = 1. Uses the
/// trace recurrence whose divisions are provably exact over Z.
std::vector<Int> char_poly(const IntMatrix& m);

/// Exact inverse over Q. Throws SingularMatrixError when det m = 0.
RatMatrix rational_inverse(RatMatrix m);

}  // namespace dgs
