#include "dgs/walk.hpp"

#include <utility>

#include "dgs/numtheory.hpp"

namespace dgs {

IntMatrix walk_matrix(const Graph& g) {
  const Index n = g.order();
  const IntMatrix a = g.adjacency_matrix();
  IntMatrix w(n, n);
  w.col(0).setOnes();
  for (Index k = 1; k < n; ++k) w.col(k) = a * w.col(k - 1);
  return w;
}

namespace {

IntMatrix drop_row(const IntMatrix& m, Index row) {
  IntMatrix out(m.rows() - 1, m.cols());
  Index r = 0;
  for (Index i = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    out.row(r++) = m.row(i);
  }
  return out;
}

int cofactor_sign(Index n, Index row) {
  // (-1)^{n+i} with 1-based i = row + 1
  return ((n + row + 1) % 2 == 0) ? 1 : -1;
}

}  // namespace

IntVector xi_vector(const Graph& g) {
  const Index n = g.order();
  const IntMatrix w = walk_matrix(g);
  if (rank_rational(w) != n - 1)
    throw DomainError("xi_vector: walk matrix rank must be n - 1");

  auto kernel = nullspace_rational(w.transpose());
  if (kernel.size() != 1)
    throw InternalError("xi_vector: kernel dimension is not 1");
  const IntVector& k = kernel.front();

  const IntMatrix v = w.leftCols(n - 1);
  Index anchor = 0;
  while (anchor < n && k(anchor) == 0) ++anchor;
  if (anchor == n) throw InternalError("xi_vector: zero kernel generator");

  const Int cof =
      Int(cofactor_sign(n, anchor)) * bareiss_det(drop_row(v, anchor));
  if (!divides(k(anchor), cof))
    throw InternalError("xi_vector: cofactor is not a multiple of the "
                        "kernel generator");
  const Int scale = exact_div(cof, k(anchor));
  if (scale == 0)
    throw InternalError("xi_vector: cofactor vector is zero");

  IntVector xi = k * scale;
  if (!is_zero(w.transpose() * xi))
    throw InternalError("xi_vector: W^T xi != 0");
  return xi;
}

IntVector xi_scaled_from(const IntVector& xi, int n) {
  const unsigned long shift = static_cast<unsigned long>(n / 2 >= 1 ? n / 2 - 1 : 0);
  const Int denom = pow_int(2, shift);
  IntVector out(xi.size());
  for (Index i = 0; i < xi.size(); ++i) {
    if (!divides(denom, xi(i)))
      throw InternalError(
          "xi_scaled: cofactor vector is not divisible by 2^(floor(n/2)-1)");
    out(i) = exact_div(xi(i), denom);
  }
  return out;
}

IntVector xi_scaled(const Graph& g) {
  return xi_scaled_from(xi_vector(g), g.order());
}

IntMatrix w_delta(const Graph& g, int delta) {
  if (delta != 0 && delta != 1)
    throw ArgumentError("w_delta: delta must be 0 or 1");
  const Index n = g.order();
  const IntMatrix w = walk_matrix(g);
  if (rank_rational(w) != n - 1)
    throw DomainError("w_delta: walk matrix rank must be n - 1");
  const IntVector scaled = xi_scaled(g);

  IntMatrix out(n, n);
  out.leftCols(n - 1) = w.leftCols(n - 1);
  out.col(n - 1) = (delta == 0) ? scaled : IntVector(-scaled);
  return out;
}

IntMatrix w_hat(const Graph& g) {
  const Index n = g.order();
  TwinScan scan = find_twins(g);
  if (!scan.unique)
    throw DomainError("w_hat: graph must have exactly one twin pair");
  IntMatrix out(n, n);
  out.leftCols(n - 1) = walk_matrix(g).leftCols(n - 1);
  out.col(n - 1) = scan.unique->alpha;
  return out;
}

PrimeContext beta_lambda0(const Graph& g, const Int& p) {
  if (p < 3 || !is_prime(p))
    throw ArgumentError("beta_lambda0: p must be an odd prime");
  const IntMatrix what = w_hat(g);

  auto kernel = nullspace_mod_p(what.transpose(), p);
  if (kernel.size() != 1)
    throw DomainError(
        "beta_lambda0: kernel of W_hat^T mod p is not one-dimensional "
        "(graph/prime pair is outside the certified family)");

  IntVector beta = kernel.front();
  Index last = -1;
  for (Index i = 0; i < beta.size(); ++i)
    if (beta(i) != 0) last = i;
  if (last < 0) throw InternalError("beta_lambda0: zero kernel generator");
  const Int inv = mod_inverse(beta(last), p);
  for (Index i = 0; i < beta.size(); ++i)
    beta(i) = mod_floor(beta(i) * inv, p);

  Index first = 0;
  while (beta(first) == 0) ++first;
  const IntVector image = g.adjacency_matrix() * beta;
  const Int lambda0 = mod_floor(image(first) * mod_inverse(beta(first), p), p);
  for (Index i = 0; i < beta.size(); ++i)
    if (mod_floor(image(i) - lambda0 * beta(i), p) != 0)
      throw DomainError(
          "beta_lambda0: A beta is not proportional to beta mod p "
          "(graph/prime pair is outside the certified family)");

  return PrimeContext{p, std::move(beta), lambda0};
}

std::pair<IntMatrix, IntMatrix> tilde_matrices(const Graph& g) {
  const Index n = g.order();
  const Index k = n / 2;
  const IntMatrix a = g.adjacency_matrix();

  // power columns up to the largest needed exponent
  const Index max_exp = (n % 2 == 0) ? std::max<Index>(2 * k - 2, k - 1)
                                     : 2 * k;
  std::vector<IntVector> powers;
  powers.reserve(max_exp + 1);
  powers.push_back(IntVector::Ones(n));
  for (Index e = 1; e <= max_exp; ++e) powers.push_back(a * powers.back());

  IntMatrix tilde(n, k), tilde1(n, k);
  for (Index j = 0; j < k; ++j) {
    if (n % 2 == 0) {
      tilde.col(j) = powers[j];
      tilde1.col(j) = powers[2 * j];
    } else {
      tilde.col(j) = powers[j + 1];
      tilde1.col(j) = powers[2 * (j + 1)];
    }
  }
  return {std::move(tilde), std::move(tilde1)};
}

bool fullbr_check(const Graph& g) {
  const Index n = g.order();
  const Index k = n / 2;
  auto [tilde, tilde1] = tilde_matrices(g);
  const IntMatrix product = walk_matrix(g).transpose() * tilde1;

  IntMatrix halved(product.rows(), product.cols());
  for (Index j = 0; j < product.cols(); ++j)
    for (Index i = 0; i < product.rows(); ++i) {
      if (!divides(2, product(i, j)))
        throw InternalError(
            "fullbr_check: W^T W_tilde_1 has an odd entry, contradicting "
            "the evenness of e^T A^k e");
      halved(i, j) = exact_div(product(i, j), 2);
    }
  return rank_mod_p(halved, 2) == k;
}

WalkBundle make_walk_bundle(const Graph& g) {
  WalkBundle bundle;
  bundle.graph = g;
  const Index n = g.order();
  bundle.w = walk_matrix(g);
  bundle.v = bundle.w.leftCols(n - 1 >= 0 ? n - 1 : 0);
  bundle.rank_q = rank_rational(bundle.w);
  bundle.rank_2 = rank_mod_p(bundle.w, 2);

  TwinScan scan = find_twins(g);
  bundle.twins = scan.unique;
  bundle.multiple_twin_pairs = scan.multiple;

  if (bundle.rank_q == n - 1) {
    bundle.xi = xi_vector(g);
    bundle.xi_over_2k = xi_scaled_from(*bundle.xi, g.order());
  }
  return bundle;
}

}  // namespace dgs
