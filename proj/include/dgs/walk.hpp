#pragma once

#include <optional>
#include <utility>

#include "dgs/exact_linalg.hpp"
#include "dgs/graph.hpp"
#include "dgs/numeric.hpp"

namespace dgs {

/// W(G) = [e, Ae, ..., A^{n-1}e]. Columns are accumulated by repeated
/// multiplication so each column is literally A times the previous one.
IntMatrix walk_matrix(const Graph& g);

/// The cofactor vector of the last walk-matrix column: xi_i is the
/// algebraic cofactor of the (i, n) entry of W(G), sign convention
/// (-1)^{n+i} det X_i with X_i = first n-1 columns of W minus row i.
/// Requires rank W = n - 1 (DomainError otherwise).
///
/// Computed as a primitive integer kernel vector of W^T rescaled and
/// signed by one explicitly evaluated cofactor; identical to the
/// all-cofactors definition by uniqueness of the one-dimensional kernel.
IntVector xi_vector(const Graph& g);

/// xi divided by 2^(floor(n/2) - 1); integral for every rank-(n-1) graph.
IntVector xi_scaled(const Graph& g);
IntVector xi_scaled_from(const IntVector& xi, int n);

/// W_delta(G) = [e, Ae, ..., A^{n-2}e, (-1)^delta xi / 2^(floor(n/2)-1)].
IntMatrix w_delta(const Graph& g, int delta);

/// W_hat(G) = [e, Ae, ..., A^{n-2}e, alpha(G)]; requires a unique twin pair.
IntMatrix w_hat(const Graph& g);

/// Eigendata of A over F_p carried by the kernel of W_hat^T: the unique
/// kernel generator beta normalized so its last nonzero entry is 1, and
/// the eigenvalue lambda0 with A beta = lambda0 beta (mod p).
struct PrimeContext {
  Int p;
  IntVector beta;
  Int lambda0;
};

PrimeContext beta_lambda0(const Graph& g, const Int& p);

/// The half-length power matrices used by the 2-adic full-rank check:
/// k = floor(n/2); for even n, (e, Ae, ..., A^{k-1}e) and
/// (e, A^2 e, ..., A^{2k-2}e); for odd n, (Ae, ..., A^k e) and
/// (A^2 e, A^4 e, ..., A^{2k}e).
std::pair<IntMatrix, IntMatrix> tilde_matrices(const Graph& g);

/// True iff (W^T W_tilde_1) / 2 has full column rank over F_2. The halved
/// product failing to be integral contradicts the evenness of e^T A^k e
/// and raises InternalError.
bool fullbr_check(const Graph& g);

/// Everything derived from the walk matrix for one graph.
struct WalkBundle {
  Graph graph;
  IntMatrix w;
  IntMatrix v;
  Index rank_q = 0;
  Index rank_2 = 0;
  std::optional<IntVector> xi;         // present iff rank_q == n - 1
  std::optional<IntVector> xi_over_2k; // xi / 2^(floor(n/2)-1)
  std::optional<TwinInfo> twins;
  bool multiple_twin_pairs = false;
};

WalkBundle make_walk_bundle(const Graph& g);

}  // namespace dgs
