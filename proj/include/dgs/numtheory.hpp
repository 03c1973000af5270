#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dgs/numeric.hpp"

namespace dgs {

/// Complete factorization of a positive integer. `factors` is sorted by
/// prime, exponents >= 1, and the product of prime powers equals `value`.
struct PrimeFactorization {
  Int value;
  std::vector<std::pair<Int, int>> factors;

  bool is_square_free() const {
    for (const auto& [p, e] : factors)
      if (e > 1) return false;
    return true;
  }
};

/// Deterministic Miller-Rabin. The fixed witness set is a proof for every
/// n below ~3.3e24; larger inputs raise ScaleError rather than degrade to a
/// probabilistic answer.
bool is_prime(const Int& n);

/// Trial division up to 1e6, then Brent's cycle-finding rho on the
/// remaining cofactors. Deterministic across runs. v >= 1 required;
/// v above the primality-certification bound raises ScaleError.
PrimeFactorization factorize(const Int& v);

/// Both square roots of a modulo an odd prime p, as (c0, p - c0) with
/// c0 <= p - c0. Returns (0, 0) for a = 0 and nullopt for non-residues.
std::optional<std::pair<Int, Int>> sqrt_mod_p(const Int& a, const Int& p);

}  // namespace dgs
