#include "dgs/dgs_engine.hpp"

#include <utility>

namespace dgs {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::controllable: return "controllable";
    case Family::almost_controllable_asymmetric:
      return "almost_controllable_asymmetric";
    case Family::almost_controllable_symmetric:
      return "almost_controllable_symmetric";
    case Family::other: return "other";
  }
  return "other";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::dgs_certified: return "DGS_certified";
    case Verdict::dgs_certified_extended: return "DGS_certified_extended";
    case Verdict::not_dgs: return "NOT_DGS";
    case Verdict::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

/// Shape test: diag(1 x ceil(n/2), 2 x (floor(n/2)-2), 2b, 0) with b odd.
/// Returns b on match. Square-freeness of b is checked by the caller.
std::optional<Int> snf_family_shape(const SnfResult& snf, Index n) {
  if (n < 4) return std::nullopt;
  const auto& d = snf.invariant_factors;
  if (static_cast<Index>(d.size()) != n) return std::nullopt;
  const Index ones = (n + 1) / 2;
  const Index twos = n / 2 - 2;
  for (Index i = 0; i < ones; ++i)
    if (d[i] != 1) return std::nullopt;
  for (Index i = ones; i < ones + twos; ++i)
    if (d[i] != 2) return std::nullopt;
  if (d[n - 1] != 0) return std::nullopt;
  const Int& second_last = d[n - 2];
  if (!divides(2, second_last)) return std::nullopt;
  Int b = exact_div(second_last, 2);
  if (divides(2, b)) return std::nullopt;  // b must be odd
  return b;
}

}  // namespace

GraphClass classify(const Graph& g) {
  GraphClass cls;
  const Index n = g.order();
  const IntMatrix w = walk_matrix(g);
  cls.rank_q = rank_rational(w);
  cls.snf = smith_normal_form(w);

  TwinScan scan = find_twins(g);
  cls.twins = scan.unique;

  if (cls.rank_q == n) {
    cls.family = Family::controllable;
  } else if (cls.rank_q == n - 1) {
    if (scan.unique) {
      cls.family = Family::almost_controllable_symmetric;
    } else if (!scan.multiple) {
      cls.family = Family::almost_controllable_asymmetric;
    } else {
      // two 2-element orbits force at least two equal row pairs in W,
      // i.e. rank <= n - 2
      throw InternalError(
          "classify: multiple twin pairs in a rank-(n-1) graph");
    }
  } else {
    cls.family = Family::other;
  }

  if (cls.family == Family::almost_controllable_symmetric && n >= 4) {
    std::optional<Int> b_shape = snf_family_shape(cls.snf, n);
    bool shape_ok = b_shape && factorize(*b_shape).is_square_free();

    // cofactor criterion, cross-checked against the shape test
    const Int b_cof = abs(xi_scaled(g)(cls.twins->tau));
    if (b_cof == 0)
      throw InternalError("classify: vanishing twin cofactor");
    const bool cof_ok =
        !divides(2, b_cof) && factorize(b_cof).is_square_free();

    if (shape_ok != cof_ok)
      throw InternalError(
          "classify: cofactor and invariant-factor criteria disagree");
    if (shape_ok && *b_shape != b_cof)
      throw InternalError(
          "classify: cofactor and invariant-factor values of b disagree");

    cls.in_f_n = shape_ok;
    if (shape_ok) {
      cls.b = *b_shape;
      cls.in_f_n_star = (*b_shape == 1);
    }
  }
  return cls;
}

namespace {

void verify_conjugation(const RatMatrix& q, const Graph& g, const Graph& h,
                        const char* who) {
  const Index n = q.rows();
  if (!exact_equal(q.transpose() * q, RatMatrix::Identity(n, n)))
    throw InternalError(std::string(who) + ": Q is not orthogonal");
  RatVector e = RatVector::Constant(n, Rat(1));
  if (!exact_equal(q * e, e))
    throw InternalError(std::string(who) + ": Q is not regular");
  if (!exact_equal(q.transpose() * to_rational(g.adjacency_matrix()) * q,
                   to_rational(h.adjacency_matrix())))
    throw InternalError(std::string(who) + ": Q does not conjugate A(g) to A(h)");
}

}  // namespace

RatMatrix theorem2_q(const Graph& g, const Graph& h) {
  const Index n = g.order();
  if (h.order() != n) throw ArgumentError("theorem2_q: orders differ");
  if (rank_rational(walk_matrix(g)) != n)
    throw DomainError("theorem2_q: graph is not controllable");
  if (!generalized_cospectral(g, h))
    throw DomainError("theorem2_q: graphs are not generalized cospectral");

  RatMatrix q;
  try {
    q = to_rational(walk_matrix(g)) *
        rational_inverse(to_rational(walk_matrix(h)));
  } catch (const SingularMatrixError&) {
    throw InternalError(
        "theorem2_q: W(h) is singular although h is generalized cospectral "
        "with a controllable graph");
  }
  verify_conjugation(q, g, h, "theorem2_q");
  return q;
}

Int level(const RatMatrix& q) {
  Int l = 1;
  for (Index j = 0; j < q.cols(); ++j)
    for (Index i = 0; i < q.rows(); ++i) l = lcm(l, q(i, j).get_den());
  return l;
}

RationalOrthogonalSolution theorem3_solutions(const Graph& g, const Graph& h) {
  const Index n = g.order();
  if (h.order() != n) throw ArgumentError("theorem3_solutions: orders differ");
  if (rank_rational(walk_matrix(g)) != n - 1)
    throw DomainError("theorem3_solutions: walk matrix rank must be n - 1");
  if (!generalized_cospectral(g, h))
    throw DomainError(
        "theorem3_solutions: graphs are not generalized cospectral");
  if (rank_rational(walk_matrix(h)) != n - 1)
    throw InternalError(
        "theorem3_solutions: cospectral mate escaped the rank-(n-1) family");

  RatMatrix w0h_inv;
  try {
    w0h_inv = rational_inverse(to_rational(w_delta(h, 0)));
  } catch (const SingularMatrixError&) {
    throw InternalError("theorem3_solutions: W_0(h) is singular");
  }

  RationalOrthogonalSolution sol;
  sol.q0 = to_rational(w_delta(g, 0)) * w0h_inv;
  sol.q1 = to_rational(w_delta(g, 1)) * w0h_inv;
  verify_conjugation(sol.q0, g, h, "theorem3_solutions[Q0]");
  verify_conjugation(sol.q1, g, h, "theorem3_solutions[Q1]");
  if (exact_equal(sol.q0, sol.q1))
    throw InternalError("theorem3_solutions: the two solutions coincide");
  sol.level0 = level(sol.q0);
  sol.level1 = level(sol.q1);

  if (find_twins(g).unique && sol.level0 != sol.level1)
    throw InternalError(
        "theorem3_solutions: levels differ for a graph with a twin pair");
  return sol;
}

AddconResult check_addcon(const Graph& g, const Int& p) {
  TwinScan scan = find_twins(g);
  if (!scan.unique)
    throw DomainError("check_addcon: graph must have exactly one twin pair");
  AddconResult r{p, 0, scan.unique->lambda1, false, beta_lambda0(g, p)};
  r.lambda0 = r.context.lambda0;
  r.holds = mod_floor(Int(r.lambda1), p) != r.lambda0;
  return r;
}

std::optional<MainpRefutation> mainp_refute_core(const IntMatrix& adjacency,
                                                 const IntVector& alpha,
                                                 const IntVector& beta,
                                                 const Int& p,
                                                 const Int& lambda0) {
  MainpRefutation ref;
  const Int bb = beta.dot(beta);
  ref.qr_value = mod_floor(-((p + 1) / 2) * bb, p);

  auto roots = sqrt_mod_p(ref.qr_value, p);
  if (!roots) {
    ref.qr_is_residue = false;
    ref.refuted_by = "quadratic_residue";
    return ref;
  }
  ref.qr_is_residue = true;

  const Int c0 = roots->first;
  const IntVector gamma0 = beta + alpha * c0;
  if (mod_floor(gamma0.dot(gamma0), p) != 0)
    throw InternalError("mainp_refute: gamma0 norm is nonzero mod p");

  const Int p2 = p * p;
  auto quadform = [&](const Int& lift) {
    const Int raw =
        gamma0.dot(adjacency * gamma0) - lift * gamma0.dot(gamma0);
    return mod_floor(raw, p2);
  };
  const Int form = quadform(lambda0);
  if (form != quadform(lambda0 - p))
    throw InternalError("mainp_refute: quadratic form depends on the lift");

  if (form != 0) {
    ref.c0 = c0;
    ref.gamma0 = gamma0;
    ref.quadform_mod_p2 = form;
    ref.refuted_by = "quadratic_form";
    return ref;
  }
  return std::nullopt;
}

std::optional<MainpRefutation> mainp_refute(const Graph& g, const Int& p) {
  AddconResult ac = check_addcon(g, p);
  if (ac.holds)
    throw ArgumentError(
        "mainp_refute: the eigenvalue condition already excludes this prime");
  const TwinScan scan = find_twins(g);
  return mainp_refute_core(g.adjacency_matrix(), scan.unique->alpha,
                           ac.context.beta, p, ac.context.lambda0);
}

DgsCertificate decide_dgs(const Graph& g, const DecideOptions& opts) {
  DgsCertificate cert;
  cert.graph = g;
  cert.cls = classify(g);
  const Index n = g.order();

  Verdict verdict = Verdict::unknown;
  if (cert.cls.in_f_n) {
    cert.fullbr_ok = fullbr_check(g);
    if (!*cert.fullbr_ok)
      throw InternalError(
          "decide_dgs: the halved power-product lost full 2-rank for an "
          "in-family graph");

    bool all_hold = true;
    bool all_failing_refuted = true;
    const IntMatrix adjacency = g.adjacency_matrix();
    for (const auto& [p, exp] : factorize(*cert.cls.b).factors) {
      AddconResult ac = check_addcon(g, p);
      PrimeEvidence ev;
      ev.p = p;
      ev.lambda0 = ac.lambda0;
      ev.lambda1 = ac.lambda1;
      ev.addcon_holds = ac.holds;
      if (!ac.holds) {
        all_hold = false;
        ev.refutation = mainp_refute_core(adjacency, cert.cls.twins->alpha,
                                          ac.context.beta, p, ac.lambda0);
        if (!ev.refutation) all_failing_refuted = false;
      }
      cert.evidence.push_back(std::move(ev));
    }
    if (all_hold)
      verdict = Verdict::dgs_certified;
    else if (all_failing_refuted)
      verdict = Verdict::dgs_certified_extended;
  }

  const bool can_search =
      (opts.mate_corpus != nullptr ||
       (opts.enumerate_mates && n <= max_enumeration_order)) &&
      n <= max_isomorphism_order;
  if (can_search) {
    const GeneralizedCharPolys key = generalized_char_polys(g);
    auto consider = [&](const Graph& h) -> bool {
      if (h.order() != n) return false;
      if (generalized_char_polys(h) != key) return false;
      if (is_isomorphic(g, h)) return false;

      Counterexample cx;
      cx.mate = h;
      if (cert.cls.rank_q == n) {
        cx.q = theorem2_q(g, h);
      } else if (cert.cls.rank_q == n - 1) {
        cx.q = theorem3_solutions(g, h).q0;
      }
      if (cx.q) cx.q_level = level(*cx.q);

      if (cert.cls.family == Family::almost_controllable_symmetric) {
        SnfResult w0_snf = smith_normal_form(w_delta(g, 0));
        cert.w0_dn = w0_snf.invariant_factors.back();
        if (cx.q_level && !divides(*cx.q_level, *cert.w0_dn))
          throw InternalError(
              "decide_dgs: counterexample level does not divide the last "
              "invariant factor of W_0");
      }
      if (verdict == Verdict::dgs_certified ||
          verdict == Verdict::dgs_certified_extended)
        throw InternalError(
            "decide_dgs: counterexample found for a certified graph");
      cert.counterexample = std::move(cx);
      verdict = Verdict::not_dgs;
      return true;
    };

    bool found = false;
    if (opts.mate_corpus)
      for (const Graph& h : *opts.mate_corpus)
        if ((found = consider(h))) break;
    if (!found && opts.enumerate_mates && n <= max_enumeration_order)
      for (const Graph& h : enumerate_all_graphs(static_cast<int>(n)))
        if ((found = consider(h))) break;
  }

  cert.verdict = verdict;
  return cert;
}

namespace {

VerificationResult fail(std::string what) { return {false, std::move(what)}; }

bool same_twins(const std::optional<TwinInfo>& a,
                const std::optional<TwinInfo>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->tau == b->tau && a->tau_prime == b->tau_prime &&
         a->adjacent == b->adjacent && a->lambda1 == b->lambda1 &&
         exact_equal(a->alpha, b->alpha);
}

bool same_refutation(const MainpRefutation& a, const MainpRefutation& b) {
  if (a.qr_value != b.qr_value || a.qr_is_residue != b.qr_is_residue ||
      a.refuted_by != b.refuted_by)
    return false;
  if (a.c0 != b.c0) return false;
  if (a.gamma0.has_value() != b.gamma0.has_value()) return false;
  if (a.gamma0 && !exact_equal(*a.gamma0, *b.gamma0)) return false;
  return a.quadform_mod_p2 == b.quadform_mod_p2;
}

}  // namespace

VerificationResult verify_certificate(const DgsCertificate& cert,
                                      const Graph& g) {
  try {
    if (!(cert.graph == g)) return fail("graph mismatch");

    const GraphClass fresh = classify(g);
    if (cert.cls.rank_q != fresh.rank_q) return fail("rank mismatch");
    if (cert.cls.family != fresh.family) return fail("family mismatch");
    if (cert.cls.in_f_n != fresh.in_f_n ||
        cert.cls.in_f_n_star != fresh.in_f_n_star)
      return fail("family-shape mismatch");
    if (cert.cls.b != fresh.b) return fail("b mismatch");
    if (cert.cls.snf.invariant_factors != fresh.snf.invariant_factors)
      return fail("snf mismatch");
    if (!same_twins(cert.cls.twins, fresh.twins)) return fail("twin mismatch");

    if (fresh.in_f_n) {
      if (!cert.fullbr_ok.has_value()) return fail("fullbr record missing");
      if (*cert.fullbr_ok != fullbr_check(g)) return fail("fullbr mismatch");

      const auto factors = factorize(*fresh.b).factors;
      if (cert.evidence.size() != factors.size())
        return fail("prime set mismatch");
      const IntMatrix adjacency = g.adjacency_matrix();
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const PrimeEvidence& ev = cert.evidence[i];
        if (ev.p != factors[i].first) return fail("prime set mismatch");
        AddconResult ac = check_addcon(g, ev.p);
        if (ev.lambda0 != ac.lambda0) return fail("lambda0 mismatch");
        if (ev.lambda1 != ac.lambda1) return fail("lambda1 mismatch");
        if (ev.addcon_holds != ac.holds) return fail("addcon mismatch");
        if (ac.holds) {
          if (ev.refutation) return fail("refutation mismatch");
        } else {
          auto ref = mainp_refute_core(adjacency, fresh.twins->alpha,
                                       ac.context.beta, ev.p, ac.lambda0);
          if (ref.has_value() != ev.refutation.has_value())
            return fail("refutation mismatch");
          if (ref && !same_refutation(*ref, *ev.refutation))
            return fail("refutation mismatch");
        }
      }
    } else {
      if (!cert.evidence.empty()) return fail("evidence for inapplicable graph");
      if (cert.fullbr_ok.has_value()) return fail("fullbr record unexpected");
    }

    bool counterexample_ok = false;
    if (cert.counterexample) {
      const Counterexample& cx = *cert.counterexample;
      if (cx.mate.order() != g.order())
        return fail("counterexample order mismatch");
      if (!generalized_cospectral(g, cx.mate))
        return fail("counterexample not generalized cospectral");
      if (is_isomorphic(g, cx.mate))
        return fail("counterexample is isomorphic");
      if (cx.q) {
        const RatMatrix& q = *cx.q;
        const Index n = g.order();
        if (q.rows() != n || q.cols() != n)
          return fail("counterexample Q shape mismatch");
        if (!exact_equal(q.transpose() * q, RatMatrix::Identity(n, n)))
          return fail("counterexample Q not orthogonal");
        RatVector e = RatVector::Constant(n, Rat(1));
        if (!exact_equal(q * e, e)) return fail("counterexample Q not regular");
        if (!exact_equal(q.transpose() * to_rational(g.adjacency_matrix()) * q,
                         to_rational(cx.mate.adjacency_matrix())))
          return fail("counterexample Q does not conjugate");
        if (!cx.q_level || *cx.q_level != level(q))
          return fail("level mismatch");
        if (fresh.family == Family::almost_controllable_symmetric) {
          SnfResult w0_snf = smith_normal_form(w_delta(g, 0));
          if (!cert.w0_dn || *cert.w0_dn != w0_snf.invariant_factors.back())
            return fail("w0 invariant factor mismatch");
          if (!divides(*cx.q_level, *cert.w0_dn))
            return fail("level divisibility violation");
        }
      }
      counterexample_ok = true;
    }

    Verdict expected = Verdict::unknown;
    if (counterexample_ok) {
      expected = Verdict::not_dgs;
    } else if (fresh.in_f_n) {
      bool all_hold = true, all_failing_refuted = true;
      for (const PrimeEvidence& ev : cert.evidence) {
        if (!ev.addcon_holds) {
          all_hold = false;
          if (!ev.refutation) all_failing_refuted = false;
        }
      }
      if (all_hold)
        expected = Verdict::dgs_certified;
      else if (all_failing_refuted)
        expected = Verdict::dgs_certified_extended;
    }
    if (cert.verdict != expected) return fail("verdict mismatch");
    return {true, {}};
  } catch (const std::exception& e) {
    return fail(std::string("verification error: ") + e.what());
  }
}

}  // namespace dgs
