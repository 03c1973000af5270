#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Eigen needs to know how to treat GMP scalars. Both are heap-backed value
// types, so RequireInitialization is mandatory (no memcpy/memset paths).
namespace Eigen {

template <> struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

template <> struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace dgs {

using Int = mpz_class;
using Rat = mpq_class;

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Input has the wrong shape (e.g. a non-square matrix where a square one
/// is required, or mismatched vector lengths).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Invalid argument value (e.g. a composite number passed as a prime).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Mathematical precondition on the input object is violated (e.g. the
/// operation requires a walk matrix of rank n-1, or a unique twin pair).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input is beyond the configured exact/oracle scale bounds.
struct ScaleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Malformed textual input. `offset` is the byte position of the defect.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what, std::size_t offset = 0)
      : std::runtime_error(what), offset(offset) {}
  std::size_t offset = 0;
};

/// A proved invariant failed at runtime. This is the "contradiction class":
/// it never fires on valid inputs and maps to exit code 2 in the CLI.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Small exact-arithmetic helpers shared across modules.

inline bool divides(const Int& d, const Int& v) {
  if (d == 0) return v == 0;
  return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Checked exact division: throws InternalError when d does not divide v.
inline Int exact_div(const Int& v, const Int& d) {
  if (d == 0 || !divides(d, v))
    throw InternalError("exact_div: division is not exact");
  Int q;
  mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  return q;
}

/// Reduce into the canonical residue range [0, p).
inline Int mod_floor(const Int& v, const Int& p) {
  Int r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline Int pow_mod(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

inline Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// Inverse of v modulo p; throws ArgumentError when gcd(v, p) != 1.
inline Int mod_inverse(const Int& v, const Int& p) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
    throw ArgumentError("mod_inverse: value is not invertible");
  return r;
}

inline int cmp_abs(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

template <typename Derived, typename OtherDerived>
bool exact_equal(const Eigen::MatrixBase<Derived>& a,
                 const Eigen::MatrixBase<OtherDerived>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) r(i, j) = Rat(m(i, j));
  return r;
}

/// Divide every entry by the gcd of all entries and normalize the sign so
/// the first nonzero entry is positive. Zero vectors pass through.
IntVector primitive_part(const IntVector& v);

/// Content (gcd of entries, nonnegative); 0 for the zero vector.
Int vector_content(const IntVector& v);

}  // namespace dgs
