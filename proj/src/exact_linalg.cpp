#include "dgs/exact_linalg.hpp"

#include <algorithm>

#include "dgs/numtheory.hpp"

namespace dgs {

IntVector primitive_part(const IntVector& v) {
  Int g = vector_content(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = exact_div(v(i), g);
  for (Index i = 0; i < v.size(); ++i) {
    if (out(i) == 0) continue;
    if (out(i) < 0) out = -out;
    break;
  }
  return out;
}

Int vector_content(const IntVector& v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

Int bareiss_det(IntMatrix m) {
  if (m.rows() != m.cols())
    throw DimensionError("bareiss_det: matrix must be square");
  const Index n = m.rows();
  if (n == 0) return 1;

  int sign = 1;
  Int prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      m.row(k).swap(m.row(piv));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j)
        m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign == 1 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

Index rank_rational(IntMatrix m) {
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  Int prev = 1;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) m.row(r).swap(m.row(piv));
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j)
        m(i, j) = exact_div(m(i, j) * m(r, c) - m(i, c) * m(r, j), prev);
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

namespace {

void require_prime(const Int& p, const char* who) {
  if (!is_prime(p)) throw ArgumentError(std::string(who) + ": p must be prime");
}

/// In-place reduced row echelon form over F_p. Entries end up in [0, p).
/// Returns the pivot columns in order.
std::vector<Index> rref_mod_p(IntMatrix& m, const Int& p) {
  const Index rows = m.rows(), cols = m.cols();
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = mod_floor(m(i, j), p);

  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) m.row(r).swap(m.row(piv));
    Int inv = mod_inverse(m(r, c), p);
    for (Index j = c; j < cols; ++j) m(r, j) = mod_floor(m(r, j) * inv, p);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Int f = m(i, c);
      for (Index j = c; j < cols; ++j)
        m(i, j) = mod_floor(m(i, j) - f * m(r, j), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Index rank_mod_p(const IntMatrix& m, const Int& p) {
  require_prime(p, "rank_mod_p");
  IntMatrix work = m;
  return static_cast<Index>(rref_mod_p(work, p).size());
}

std::vector<IntVector> nullspace_mod_p(const IntMatrix& m, const Int& p) {
  require_prime(p, "nullspace_mod_p");
  IntMatrix work = m;
  std::vector<Index> pivots = rref_mod_p(work, p);
  const Index cols = m.cols();

  std::vector<bool> is_pivot(cols, false);
  for (Index c : pivots) is_pivot[c] = true;

  std::vector<IntVector> basis;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    IntVector v = IntVector::Zero(cols);
    v(f) = 1;
    for (std::size_t t = 0; t < pivots.size(); ++t)
      v(pivots[t]) = mod_floor(-work(static_cast<Index>(t), f), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

/// RREF over Q on a rational matrix; returns pivot columns.
std::vector<Index> rref_rational(RatMatrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) m.row(r).swap(m.row(piv));
    Rat inv = 1 / m(r, c);
    for (Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

IntVector clear_denominators(const RatVector& v) {
  Int l = 1;
  for (Index i = 0; i < v.size(); ++i) l = lcm(l, v(i).get_den());
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    Rat scaled = v(i) * Rat(l);
    out(i) = scaled.get_num();
  }
  return out;
}

}  // namespace

std::vector<IntVector> nullspace_rational(const IntMatrix& m) {
  RatMatrix work = to_rational(m);
  std::vector<Index> pivots = rref_rational(work);
  const Index cols = m.cols();

  std::vector<bool> is_pivot(cols, false);
  for (Index c : pivots) is_pivot[c] = true;

  std::vector<IntVector> basis;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v = RatVector::Zero(cols);
    v(f) = 1;
    for (std::size_t t = 0; t < pivots.size(); ++t)
      v(pivots[t]) = -work(static_cast<Index>(t), f);
    basis.push_back(primitive_part(clear_denominators(v)));
  }
  return basis;
}

std::optional<RatVector> solve_rational(const IntMatrix& a,
                                        const IntVector& b) {
  if (a.rows() != b.size())
    throw DimensionError("solve_rational: incompatible shapes");
  const Index rows = a.rows(), cols = a.cols();
  RatMatrix aug(rows, cols + 1);
  aug.leftCols(cols) = to_rational(a);
  for (Index i = 0; i < rows; ++i) aug(i, cols) = Rat(b(i));

  std::vector<Index> pivots = rref_rational(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;

  RatVector x = RatVector::Zero(cols);
  for (std::size_t t = 0; t < pivots.size(); ++t)
    x(pivots[t]) = aug(static_cast<Index>(t), cols);
  return x;
}

IntMatrix SnfResult::diagonal_matrix() const {
  IntMatrix d = IntMatrix::Zero(rows, cols);
  for (std::size_t i = 0; i < invariant_factors.size(); ++i)
    d(static_cast<Index>(i), static_cast<Index>(i)) = invariant_factors[i];
  return d;
}

SnfResult smith_normal_form(const IntMatrix& input, bool with_transforms) {
  IntMatrix m = input;
  const Index rows = m.rows(), cols = m.cols();
  const Index t = std::min(rows, cols);

  IntMatrix u, v;
  if (with_transforms) {
    u = IntMatrix::Identity(rows, rows);
    v = IntMatrix::Identity(cols, cols);
  }

  auto swap_rows = [&](Index a, Index b) {
    if (a == b) return;
    m.row(a).swap(m.row(b));
    if (with_transforms) u.row(a).swap(u.row(b));
  };
  auto swap_cols = [&](Index a, Index b) {
    if (a == b) return;
    m.col(a).swap(m.col(b));
    if (with_transforms) v.col(a).swap(v.col(b));
  };
  auto add_row = [&](Index dst, Index src, const Int& f) {
    m.row(dst) += m.row(src) * f;
    if (with_transforms) u.row(dst) += u.row(src) * f;
  };
  auto add_col = [&](Index dst, Index src, const Int& f) {
    m.col(dst) += m.col(src) * f;
    if (with_transforms) v.col(dst) += v.col(src) * f;
  };

  // Move the submatrix entry of least nonzero magnitude to (k, k);
  // false when the submatrix is zero.
  auto pivot_to_front = [&](Index k) {
    Index bi = -1, bj = -1;
    for (Index i = k; i < rows; ++i)
      for (Index j = k; j < cols; ++j) {
        if (m(i, j) == 0) continue;
        if (bi < 0 || cmp_abs(m(i, j), m(bi, bj)) < 0) {
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) return false;
    swap_rows(k, bi);
    swap_cols(k, bj);
    return true;
  };

  for (Index k = 0; k < t; ++k) {
    if (!pivot_to_front(k)) break;
    for (;;) {
      // clear below: truncated quotients leave remainders smaller than
      // the pivot, so re-pivoting strictly shrinks it and terminates
      bool dirty = false;
      for (Index i = k + 1; i < rows; ++i) {
        if (m(i, k) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), m(i, k).get_mpz_t(), m(k, k).get_mpz_t());
        add_row(i, k, -q);
        if (m(i, k) != 0) dirty = true;
      }
      if (dirty) {
        Index best = k;
        for (Index i = k + 1; i < rows; ++i)
          if (m(i, k) != 0 &&
              (m(best, k) == 0 || cmp_abs(m(i, k), m(best, k)) < 0))
            best = i;
        swap_rows(k, best);
        continue;
      }
      dirty = false;
      for (Index j = k + 1; j < cols; ++j) {
        if (m(k, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), m(k, j).get_mpz_t(), m(k, k).get_mpz_t());
        add_col(j, k, -q);
        if (m(k, j) != 0) dirty = true;
      }
      if (dirty) {
        Index best = k;
        for (Index j = k + 1; j < cols; ++j)
          if (m(k, j) != 0 &&
              (m(k, best) == 0 || cmp_abs(m(k, j), m(k, best)) < 0))
            best = j;
        swap_cols(k, best);
        continue;
      }
      // clearing the row may have disturbed the column
      bool col_clear = true;
      for (Index i = k + 1; i < rows; ++i)
        if (m(i, k) != 0) col_clear = false;
      if (!col_clear) continue;

      // divisibility sweep: the pivot must divide the whole remainder
      Index di = -1;
      for (Index i = k + 1; i < rows && di < 0; ++i)
        for (Index j = k + 1; j < cols; ++j)
          if (!divides(m(k, k), m(i, j))) {
            di = i;
            break;
          }
      if (di < 0) break;
      add_row(k, di, 1);
    }
    if (m(k, k) < 0) {
      m.row(k) = -m.row(k);
      if (with_transforms) u.row(k) = -u.row(k);
    }
  }

  SnfResult result;
  result.rows = rows;
  result.cols = cols;
  result.invariant_factors.reserve(t);
  for (Index i = 0; i < t; ++i) result.invariant_factors.push_back(m(i, i));
  for (Index i = 0; i + 1 < t; ++i)
    if (!divides(result.invariant_factors[i], result.invariant_factors[i + 1]))
      throw InternalError("smith_normal_form: divisibility chain broken");
  if (with_transforms) {
    if (!exact_equal(u * input * v, result.diagonal_matrix()))
      throw InternalError("smith_normal_form: transform product mismatch");
    result.transforms = std::make_pair(std::move(u), std::move(v));
  }
  return result;
}

SnfQueries snf_queries(const SnfResult& s, const Int& p) {
  if (s.rows != s.cols)
    throw DimensionError("snf_queries: result must come from a square matrix");
  require_prime(p, "snf_queries");
  SnfQueries q;
  q.det_abs = 1;
  for (const Int& d : s.invariant_factors) q.det_abs *= d;
  q.det_abs = abs(q.det_abs);
  q.p_rank = 0;
  for (const Int& d : s.invariant_factors)
    if (!divides(p, d)) ++q.p_rank;
  q.det_p_power_bound =
      pow_int(p, static_cast<unsigned long>(s.rows - q.p_rank));
  q.has_p2_kernel_vector =
      !s.invariant_factors.empty() &&
      divides(p * p, s.invariant_factors.back());
  return q;
}

std::vector<Int> char_poly(const IntMatrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("char_poly: matrix must be square");
  const Index n = a.rows();
  std::vector<Int> c(static_cast<std::size_t>(n) + 1);
  c[n] = 1;
  if (n == 0) return c;

  IntMatrix m = a;
  c[n - 1] = -m.trace();
  for (Index k = 2; k <= n; ++k) {
    IntMatrix shifted = m;
    for (Index i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
    m = a * shifted;
    c[n - k] = exact_div(-m.trace(), Int(k));
  }
  return c;
}

RatMatrix rational_inverse(RatMatrix m) {
  if (m.rows() != m.cols())
    throw DimensionError("rational_inverse: matrix must be square");
  const Index n = m.rows();
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Index c = 0; c < n; ++c) {
    Index piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) throw SingularMatrixError("rational_inverse: singular matrix");
    if (piv != c) {
      m.row(c).swap(m.row(piv));
      inv.row(c).swap(inv.row(piv));
    }
    Rat f = 1 / m(c, c);
    m.row(c) *= f;
    inv.row(c) *= f;
    for (Index i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rat g = m(i, c);
      m.row(i) -= m.row(c) * g;
      inv.row(i) -= inv.row(c) * g;
    }
  }
  return inv;
}

}  // namespace dgs
