#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgs/exact_linalg.hpp"
#include "dgs/graph.hpp"
#include "dgs/numtheory.hpp"
#include "dgs/walk.hpp"

namespace dgs {

enum class Family {
  controllable,
  almost_controllable_asymmetric,
  almost_controllable_symmetric,
  other,
};

std::string_view family_name(Family f);

/// Family classification with its Smith-normal-form evidence. in_f_n is
/// the "diag(1...1, 2...2, 2b, 0) with b odd square-free" shape test on
/// the walk matrix; it is cross-checked both ways against the cofactor
/// criterion |xi_tau| / 2^(floor(n/2)-1) = b, and any disagreement raises
/// InternalError.
struct GraphClass {
  Index rank_q = 0;
  Family family = Family::other;
  bool in_f_n = false;
  bool in_f_n_star = false;
  std::optional<Int> b;
  SnfResult snf;
  std::optional<TwinInfo> twins;
};

GraphClass classify(const Graph& g);

/// The unique regular rational orthogonal Q with Q^T A(g) Q = A(h) for a
/// controllable g: Q = W(g) W(h)^{-1}. All postconditions are verified
/// exactly; a failure after validated preconditions raises InternalError.
RatMatrix theorem2_q(const Graph& g, const Graph& h);

/// The exactly-two solutions for a rank-(n-1) g: Q_delta = W_delta(g)
/// W_0(h)^{-1}. Orthogonality, row sums, exact conjugation and Q0 != Q1
/// are all verified; for graphs with a twin pair the two levels are
/// checked equal.
struct RationalOrthogonalSolution {
  RatMatrix q0;
  RatMatrix q1;
  Int level0;
  Int level1;
};

RationalOrthogonalSolution theorem3_solutions(const Graph& g, const Graph& h);

/// Least positive k such that k * q is integral (lcm of lowest-terms
/// denominators).
Int level(const RatMatrix& q);

/// The per-prime eigenvalue comparison: holds iff lambda1 != lambda0 (mod p).
struct AddconResult {
  Int p;
  Int lambda0;
  int lambda1 = 0;
  bool holds = false;
  PrimeContext context;
};

AddconResult check_addcon(const Graph& g, const Int& p);

/// Outcome of testing the necessary conditions for p | level at a prime
/// where the eigenvalue comparison failed. `refuted_by` is either
/// "quadratic_residue" (the residue test failed; c0/gamma0 absent) or
/// "quadratic_form" (gamma0^T (A - lambda0 I) gamma0 != 0 mod p^2).
struct MainpRefutation {
  Int qr_value;
  bool qr_is_residue = false;
  std::optional<Int> c0;
  std::optional<IntVector> gamma0;
  std::optional<Int> quadform_mod_p2;
  std::string refuted_by;
};

/// nullopt = no necessary condition failed (no refutation available).
/// Calling this at a prime where the eigenvalue comparison holds is a
/// misuse (ArgumentError): such primes are already excluded from the level.
std::optional<MainpRefutation> mainp_refute(const Graph& g, const Int& p);

/// Pure core of the refutation test, exposed for direct driving of both
/// branches with synthetic data.
std::optional<MainpRefutation> mainp_refute_core(const IntMatrix& adjacency,
                                                 const IntVector& alpha,
                                                 const IntVector& beta,
                                                 const Int& p,
                                                 const Int& lambda0);

enum class Verdict {
  dgs_certified,
  dgs_certified_extended,
  not_dgs,
  unknown,
};

std::string_view verdict_name(Verdict v);

struct PrimeEvidence {
  Int p;
  Int lambda0;
  int lambda1 = 0;
  bool addcon_holds = false;
  std::optional<MainpRefutation> refutation;  // present iff refuted
};

struct Counterexample {
  Graph mate;
  std::optional<RatMatrix> q;
  std::optional<Int> q_level;
};

/// Machine-checkable verdict with the full evidence trail. Certificates
/// are self-contained: verify_certificate needs only the graph and the
/// fields below.
struct DgsCertificate {
  Graph graph;
  Verdict verdict = Verdict::unknown;
  GraphClass cls;
  std::vector<PrimeEvidence> evidence;
  std::optional<Counterexample> counterexample;
  std::optional<bool> fullbr_ok;  // recorded for every in_f_n graph
  std::optional<Int> w0_dn;       // last invariant factor of SNF(W_0(g))
};

struct DecideOptions {
  /// Candidate mates to test verbatim (same order, generalized cospectral,
  /// non-isomorphic). Non-isomorphism needs the oracle, so mates are only
  /// usable for n <= max_isomorphism_order.
  const std::vector<Graph>* mate_corpus = nullptr;
  /// Additionally search the built-in n <= 6 catalogue.
  bool enumerate_mates = false;
};

/// Full decision procedure. Soundness over completeness: certification
/// requires the in_f_n shape plus, per odd prime factor of b, either the
/// eigenvalue condition or a refutation; a NOT_DGS verdict requires an
/// explicitly verified counterexample; everything else is UNKNOWN.
DgsCertificate decide_dgs(const Graph& g, const DecideOptions& opts = {});

struct VerificationResult {
  bool ok = false;
  std::string discrepancy;  // named mismatch when !ok
};

/// Recompute every claimed quantity from scratch and confirm the verdict
/// follows from the evidence.
VerificationResult verify_certificate(const DgsCertificate& cert,
                                      const Graph& g);

}  // namespace dgs
