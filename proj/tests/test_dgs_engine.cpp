#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgs/certificate_io.hpp"
#include "dgs/dgs_engine.hpp"
#include "dgs/walk.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dgs;

namespace {

Graph example9_mate() {
  const Graph g = fixtures::example9();
  const RatMatrix q = fixtures::example9_q();
  const RatMatrix qaq =
      q.transpose() * to_rational(g.adjacency_matrix()) * q;
  Graph h(9);
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) {
      REQUIRE((qaq(i, j) == 0 || qaq(i, j) == 1));
      if (qaq(i, j) == 1) h.set_edge(i, j, true);
    }
  return h;
}

}  // namespace

TEST_CASE("classify the fixtures") {
  GraphClass c9 = classify(fixtures::example9());
  CHECK(c9.family == Family::almost_controllable_symmetric);
  CHECK(c9.rank_q == 8);
  CHECK(c9.in_f_n);
  CHECK_FALSE(c9.in_f_n_star);
  REQUIRE(c9.b);
  CHECK(*c9.b == 303);

  GraphClass c10 = classify(fixtures::example10());
  CHECK(c10.in_f_n);
  CHECK(*c10.b == 152345);

  GraphClass c13 = classify(fixtures::example13());
  CHECK(c13.in_f_n);
  CHECK(*c13.b == Int("123899854845"));

  GraphClass ck3 = classify(fixtures::complete(3));
  CHECK(ck3.rank_q == 1);
  CHECK(ck3.family == Family::other);
  CHECK_FALSE(ck3.in_f_n);
  CHECK_FALSE(ck3.b);

  // the 5-vertex fixture lands in the b = 1 subfamily
  GraphClass c5 = classify(fixtures::example5());
  CHECK(c5.in_f_n);
  CHECK(c5.in_f_n_star);
  CHECK(*c5.b == 1);
  CHECK(c5.snf.invariant_factors == std::vector<Int>{1, 1, 1, 2, 0});
}

TEST_CASE("theorem2_q") {
  // first controllable graph in the n=4 catalogue
  const auto& cat = enumerate_all_graphs(4);
  const Graph* controllable = nullptr;
  for (const Graph& g : cat)
    if (rank_rational(walk_matrix(g)) == 4) {
      controllable = &g;
      break;
    }
  REQUIRE(controllable);
  const Graph g = *controllable;

  // uniqueness forces the identity for h = g
  CHECK(exact_equal(theorem2_q(g, g), RatMatrix::Identity(4, 4)));

  // a relabeling is recovered as the permutation matrix
  std::vector<int> perm{2, 0, 3, 1};
  Graph h(4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (g.edge(a, b)) h.set_edge(perm[a], perm[b], true);
  RatMatrix q = theorem2_q(g, h);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(q(a, b) == (perm[a] == b ? 1 : 0));

  CHECK_THROWS_AS(theorem2_q(fixtures::example5(), fixtures::example5()),
                  DomainError);  // rank n-1, not controllable
  CHECK_THROWS_AS(theorem2_q(g, complement(g)), DomainError);
}

TEST_CASE("theorem3_solutions on K2") {
  auto sol = theorem3_solutions(fixtures::k2(), fixtures::k2());
  CHECK(exact_equal(sol.q0, RatMatrix::Identity(2, 2)));
  RatMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(exact_equal(sol.q1, swap));
  CHECK(sol.level0 == 1);
  CHECK(sol.level1 == 1);
}

TEST_CASE("theorem3_solutions on the 5-vertex fixture with itself") {
  const Graph g = fixtures::example5();
  auto sol = theorem3_solutions(g, g);
  const bool q0_is_identity = exact_equal(sol.q0, RatMatrix::Identity(5, 5));
  const bool q1_is_identity = exact_equal(sol.q1, RatMatrix::Identity(5, 5));
  CHECK(q0_is_identity != q1_is_identity);  // exactly one is the identity
  CHECK_FALSE(exact_equal(sol.q0, sol.q1));
}

TEST_CASE("theorem3_solutions reproduces the printed level-3 pair") {
  const Graph g = fixtures::example9();
  const Graph h = example9_mate();
  auto sol = theorem3_solutions(g, h);
  CHECK(sol.level0 == 3);
  CHECK(sol.level1 == 3);

  const RatMatrix printed = fixtures::example9_q();
  const TwinInfo twins = *find_twins(g).unique;
  RatMatrix swapped = printed;
  swapped.row(twins.tau).swap(swapped.row(twins.tau_prime));
  const bool q0_hit =
      exact_equal(sol.q0, printed) || exact_equal(sol.q0, swapped);
  const bool q1_hit =
      exact_equal(sol.q1, printed) || exact_equal(sol.q1, swapped);
  CHECK(q0_hit);
  CHECK(q1_hit);

  CHECK_THROWS_AS(theorem3_solutions(g, fixtures::complete(9)), DomainError);
}

TEST_CASE("level") {
  CHECK(level(RatMatrix::Identity(4, 4)) == 1);
  CHECK(level(fixtures::example9_q()) == 3);
  RatMatrix m(2, 2);
  m << Rat(1, 2), Rat(1, 2), Rat(1, 6), Rat(5, 6);
  CHECK(level(m) == 6);
}

TEST_CASE("check_addcon at the fixture primes") {
  auto a10_5 = check_addcon(fixtures::example10(), 5);
  CHECK(a10_5.lambda0 == 2);
  CHECK(a10_5.lambda1 == -1);
  CHECK(a10_5.holds);

  auto a13_5 = check_addcon(fixtures::example13(), 5);
  CHECK_FALSE(a13_5.holds);

  auto a9_3 = check_addcon(fixtures::example9(), 3);
  CHECK_FALSE(a9_3.holds);

  for (const Int& p : {Int(3), Int(13), Int(3607), Int(176153)})
    CHECK(check_addcon(fixtures::example13(), p).holds);

  CHECK_THROWS_AS(check_addcon(fixtures::path(4), 3), DomainError);
}

TEST_CASE("mainp_refute on the 13-vertex fixture at p=5") {
  auto ref = mainp_refute(fixtures::example13(), 5);
  REQUIRE(ref);
  CHECK(ref->refuted_by == "quadratic_form");
  CHECK(ref->qr_value == 1);  // -3 * 48 = -144 = 1 (mod 5)
  CHECK(ref->qr_is_residue);
  REQUIRE(ref->c0);
  CHECK(*ref->c0 == 1);
  REQUIRE(ref->gamma0);
  CHECK(exact_equal(*ref->gamma0, fixtures::example13_gamma0()));
  REQUIRE(ref->quadform_mod_p2);
  CHECK(*ref->quadform_mod_p2 != 0);
  CHECK(mod_floor(*ref->quadform_mod_p2, 25) == *ref->quadform_mod_p2);
}

TEST_CASE("mainp_refute cannot refute the genuine level-3 prime") {
  CHECK_FALSE(mainp_refute(fixtures::example9(), 3));
}

TEST_CASE("mainp_refute misuse") {
  CHECK_THROWS_AS(mainp_refute(fixtures::example10(), 5), ArgumentError);
}

TEST_CASE("mainp_refute_core branch contract on synthetic data") {
  // residue branch: p = 5, beta^T beta = 1 -> qr = -3 = 2 (mod 5), a
  // non-residue, so the refutation cites the residue test and omits c0
  const IntMatrix a = IntMatrix::Zero(3, 3);
  IntVector alpha(3), beta(3);
  alpha << -1, 1, 0;
  beta << 0, 0, 1;
  auto ref = mainp_refute_core(a, alpha, beta, 5, 0);
  REQUIRE(ref);
  CHECK(ref->refuted_by == "quadratic_residue");
  CHECK_FALSE(ref->qr_is_residue);
  CHECK(ref->qr_value == 2);
  CHECK_FALSE(ref->c0);
  CHECK_FALSE(ref->gamma0);
  CHECK_FALSE(ref->quadform_mod_p2);
}

TEST_CASE("gamma vectors swap under the twin transposition") {
  const Graph g = fixtures::example13();
  const TwinInfo twins = *find_twins(g).unique;
  auto ctx = beta_lambda0(g, 5);
  auto roots = sqrt_mod_p(1, 5);
  REQUIRE(roots);
  const Int c0 = roots->first;
  IntVector gamma0 = ctx.beta + twins.alpha * c0;
  IntVector gamma1 = ctx.beta - twins.alpha * c0;
  IntVector swapped = gamma0;
  std::swap(swapped(twins.tau), swapped(twins.tau_prime));
  CHECK(exact_equal(swapped, gamma1));
}

TEST_CASE("scaled similarity matrix has 1-dimensional column space mod 3 "
          "spanned by a gamma vector") {
  const Graph g = fixtures::example9();
  const RatMatrix q = fixtures::example9_q();
  IntMatrix lq(9, 9);
  for (Index i = 0; i < 9; ++i)
    for (Index j = 0; j < 9; ++j) {
      const Rat scaled = q(i, j) * 3;
      REQUIRE(scaled.get_den() == 1);
      lq(i, j) = scaled.get_num();
    }
  CHECK(rank_mod_p(lq, 3) == 1);

  // the nonzero columns mod 3 lie in span(gamma0) or span(gamma1)
  const TwinInfo twins = *find_twins(g).unique;
  auto ctx = beta_lambda0(g, 3);
  const Int qr = mod_floor(Int(-2) * ctx.beta.dot(ctx.beta), 3);
  auto roots = sqrt_mod_p(qr, 3);
  REQUIRE(roots);
  const IntVector gamma0 = ctx.beta + twins.alpha * roots->first;
  const IntVector gamma1 = ctx.beta - twins.alpha * roots->first;
  for (Index j = 0; j < 9; ++j) {
    IntVector col = lq.col(j);
    bool zero = true;
    for (Index i = 0; i < 9; ++i)
      if (mod_floor(col(i), 3) != 0) zero = false;
    if (zero) continue;
    IntMatrix with_g0(9, 2), with_g1(9, 2);
    with_g0.col(0) = gamma0;
    with_g0.col(1) = col;
    with_g1.col(0) = gamma1;
    with_g1.col(1) = col;
    const bool in_g0 = rank_mod_p(with_g0, 3) == 1;
    const bool in_g1 = rank_mod_p(with_g1, 3) == 1;
    CHECK((in_g0 || in_g1));
  }
}

TEST_CASE("decide_dgs fixture verdicts") {
  CHECK(decide_dgs(fixtures::example10()).verdict == Verdict::dgs_certified);
  CHECK(decide_dgs(fixtures::example13()).verdict ==
        Verdict::dgs_certified_extended);
  CHECK(decide_dgs(fixtures::example5()).verdict == Verdict::dgs_certified);
  CHECK(decide_dgs(fixtures::example9()).verdict == Verdict::unknown);
  CHECK(decide_dgs(fixtures::complete(3)).verdict == Verdict::unknown);
}

TEST_CASE("decide_dgs with a mate corpus finds the counterexample") {
  const Graph g = fixtures::example9();
  std::vector<Graph> corpus{fixtures::example9(), example9_mate()};
  DecideOptions opts;
  opts.mate_corpus = &corpus;
  DgsCertificate cert = decide_dgs(g, opts);
  CHECK(cert.verdict == Verdict::not_dgs);
  REQUIRE(cert.counterexample);
  CHECK(cert.counterexample->mate == example9_mate());
  REQUIRE(cert.counterexample->q_level);
  CHECK(*cert.counterexample->q_level == 3);
  REQUIRE(cert.w0_dn);
  CHECK(divides(*cert.counterexample->q_level, *cert.w0_dn));

  // evidence for the unrefutable prime is recorded as such
  bool saw_p3 = false;
  for (const PrimeEvidence& ev : cert.evidence)
    if (ev.p == 3) {
      saw_p3 = true;
      CHECK_FALSE(ev.addcon_holds);
      CHECK_FALSE(ev.refutation);
    }
  CHECK(saw_p3);
}

TEST_CASE("certificates verify and survive serialization") {
  const Graph g10 = fixtures::example10();
  DgsCertificate cert = decide_dgs(g10);
  CHECK(verify_certificate(cert, g10).ok);

  auto doc = certificate_to_json(cert, std::string("2026-08-09T00:00:00Z"));
  CHECK(doc["schema"] == "dgs-cert/1");
  DgsCertificate parsed = certificate_from_json(doc);
  CHECK(verify_certificate(parsed, g10).ok);
  CHECK(parsed.verdict == cert.verdict);
  CHECK(parsed.evidence.size() == cert.evidence.size());

  // documents omit the timestamp when not supplied
  auto bare = certificate_to_json(cert, std::nullopt);
  CHECK_FALSE(bare.contains("generated_at"));
}

TEST_CASE("tampered certificates are rejected with named discrepancies") {
  const Graph g10 = fixtures::example10();
  DgsCertificate cert = decide_dgs(g10);

  DgsCertificate bad = cert;
  bad.evidence[0].lambda0 += 1;
  auto r = verify_certificate(bad, g10);
  CHECK_FALSE(r.ok);
  CHECK(r.discrepancy == "lambda0 mismatch");

  bad = cert;
  bad.verdict = Verdict::unknown;
  CHECK(verify_certificate(bad, g10).discrepancy == "verdict mismatch");

  bad = cert;
  bad.cls.snf.invariant_factors[3] = 7;
  CHECK(verify_certificate(bad, g10).discrepancy == "snf mismatch");

  bad = cert;
  bad.cls.b = Int(99);
  CHECK(verify_certificate(bad, g10).discrepancy == "b mismatch");

  CHECK_FALSE(verify_certificate(cert, fixtures::example9()).ok);
}

TEST_CASE("NOT_DGS certificates embed a fully checkable counterexample") {
  const Graph g = fixtures::example9();
  std::vector<Graph> corpus{example9_mate()};
  DecideOptions opts;
  opts.mate_corpus = &corpus;
  DgsCertificate cert = decide_dgs(g, opts);
  auto r = verify_certificate(cert, g);
  CHECK(r.ok);

  // JSON round trip preserves everything the verifier needs
  DgsCertificate parsed =
      certificate_from_json(certificate_to_json(cert, std::nullopt));
  CHECK(verify_certificate(parsed, g).ok);

  DgsCertificate bad = cert;
  bad.counterexample->q_level = Int(6);
  CHECK(verify_certificate(bad, g).discrepancy == "level mismatch");

  bad = cert;
  bad.counterexample->mate = fixtures::example9();
  CHECK(verify_certificate(bad, g).discrepancy == "counterexample is isomorphic");

  bad = cert;
  bad.counterexample->mate = fixtures::complete(9);
  CHECK(verify_certificate(bad, g).discrepancy ==
        "counterexample not generalized cospectral");
}

TEST_CASE("verdict names round trip through serialization") {
  for (Verdict v : {Verdict::dgs_certified, Verdict::dgs_certified_extended,
                    Verdict::not_dgs, Verdict::unknown}) {
    DgsCertificate cert;
    cert.graph = fixtures::k2();
    cert.verdict = v;
    cert.cls = classify(fixtures::k2());
    auto doc = certificate_to_json(cert, std::nullopt);
    CHECK(certificate_from_json(doc).verdict == v);
  }
}

TEST_CASE("certificate parser rejects malformed documents") {
  nlohmann::json doc = certificate_to_json(decide_dgs(fixtures::k2()), {});
  nlohmann::json bad = doc;
  bad["schema"] = "dgs-cert/2";
  CHECK_THROWS_AS(certificate_from_json(bad), ParseError);

  bad = doc;
  bad.erase("verdict");
  CHECK_THROWS_AS(certificate_from_json(bad), ParseError);

  bad = doc;
  bad["class"]["snf_w"]["invariant_factors"][0] = "x17";
  CHECK_THROWS_AS(certificate_from_json(bad), ParseError);
}
