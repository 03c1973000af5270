#include "dgs/numtheory.hpp"

#include <algorithm>
#include <random>

namespace dgs {
namespace {

// The fixed Miller-Rabin witness set below is a primality proof for all
// n < 3317044064679887385961981 (Sorenson & Webster).
const Int certification_bound("3317044064679887385961981");

constexpr unsigned long mr_witnesses[] = {2,  3,  5,  7,  11, 13,
                                          17, 19, 23, 29, 31, 37};

bool miller_rabin_witness(const Int& n, const Int& d, unsigned s,
                          unsigned long a) {
  Int x = pow_mod(Int(a), d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mod_floor(x * x, n);
    if (x == n - 1) return false;
  }
  return true;  // composite witness found
}

Int pollard_brent(const Int& n, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  while (true) {
    Int y = mod_floor(Int(rng()), n);
    Int c = mod_floor(Int(rng()), n);
    if (c == 0) c = 1;
    Int g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = mod_floor(y * y + c, n);
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        Int limit = (r - k < 128) ? Int(r - k) : Int(128);
        for (Int i = 0; i < limit; ++i) {
          y = mod_floor(y * y + c, n);
          q = mod_floor(q * (x - y), n);
        }
        g = gcd(q, n);
        k += 128;
      }
      r *= 2;
    }
    if (g == n) {
      // backtrack one step at a time
      do {
        ys = mod_floor(ys * ys + c, n);
        g = gcd(x - ys, n);
      } while (g == 1);
    }
    if (g != n) return g;
    // cycle degenerated; retry with fresh parameters
  }
}

void factor_into(const Int& n, std::vector<std::pair<Int, int>>& out,
                 std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  Int d = pollard_brent(n, rng);
  factor_into(d, out, rng);
  factor_into(exact_div(n, d), out, rng);
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned long p : mr_witnesses) {
    if (n == p) return true;
    if (divides(Int(p), n)) return false;
  }
  if (n >= certification_bound)
    throw ScaleError("is_prime: value exceeds the deterministic "
                     "certification bound (~3.3e24)");
  Int d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  for (unsigned long a : mr_witnesses)
    if (miller_rabin_witness(n, d, s, a)) return false;
  return true;
}

PrimeFactorization factorize(const Int& v) {
  if (v < 1) throw ArgumentError("factorize: value must be positive");
  if (v >= certification_bound)
    throw ScaleError("factorize: value exceeds the supported range (~1e24)");

  PrimeFactorization result;
  result.value = v;
  Int n = v;

  auto strip = [&](const Int& p) {
    int e = 0;
    while (divides(p, n)) {
      n = exact_div(n, p);
      ++e;
    }
    if (e > 0) result.factors.emplace_back(p, e);
  };

  strip(2);
  strip(3);
  // 6k +- 1 wheel up to the trial-division bound
  for (unsigned long k = 5; k <= 1000000 && n > 1; k += 6) {
    if (Int(k) * k > n && n > 1) break;
    strip(Int(k));
    strip(Int(k + 2));
  }
  if (n > 1) {
    if (Int(1000000) * 1000000 > n || is_prime(n)) {
      // below the trial bound squared the cofactor is necessarily prime
      result.factors.emplace_back(n, 1);
    } else {
      std::mt19937_64 rng(0x5eed5eed5eed5eedULL);
      std::vector<std::pair<Int, int>> rest;
      factor_into(n, rest, rng);
      std::sort(rest.begin(), rest.end());
      for (auto& [p, e] : rest) {
        if (!result.factors.empty() && result.factors.back().first == p)
          result.factors.back().second += e;
        else
          result.factors.emplace_back(p, e);
      }
    }
  }

  Int check = 1;
  for (const auto& [p, e] : result.factors) check *= pow_int(p, e);
  if (check != v) throw InternalError("factorize: product check failed");
  return result;
}

std::optional<std::pair<Int, Int>> sqrt_mod_p(const Int& a, const Int& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_prime(p))
    throw ArgumentError("sqrt_mod_p: modulus must be an odd prime");
  if (a < 0 || a >= p)
    throw ArgumentError("sqrt_mod_p: residue must lie in [0, p)");
  if (a == 0) return std::make_pair(Int(0), Int(0));

  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;

  Int root;
  if (mod_floor(p, 4) == 3) {
    root = pow_mod(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks: p - 1 = q 2^s with q odd
    Int q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
      q /= 2;
      ++s;
    }
    Int z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    Int m = s;
    Int c = pow_mod(z, q, p);
    Int t = pow_mod(a, q, p);
    root = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
      Int i = 0;
      Int t2 = t;
      while (t2 != 1) {
        t2 = mod_floor(t2 * t2, p);
        ++i;
        if (i == m) throw InternalError("sqrt_mod_p: order search failed");
      }
      Int exp = m - i - 1;
      Int b = c;
      for (Int j = 0; j < exp; ++j) b = mod_floor(b * b, p);
      m = i;
      c = mod_floor(b * b, p);
      t = mod_floor(t * c, p);
      root = mod_floor(root * b, p);
    }
  }
  if (mod_floor(root * root, p) != a)
    throw InternalError("sqrt_mod_p: verification failed");
  Int other = p - root;
  if (root > other) std::swap(root, other);
  return std::make_pair(root, other);
}

}  // namespace dgs
