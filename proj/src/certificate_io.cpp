#include "dgs/certificate_io.hpp"

#include <utility>

namespace dgs {

using nlohmann::json;

std::string format_rational(const Rat& r) { return r.get_str(); }

Rat parse_rational(const std::string& text) {
  try {
    Rat r(text);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw ParseError("certificate: malformed rational '" + text + "'");
  }
}

namespace {

std::string int_str(const Int& v) { return v.get_str(); }

Int parse_int(const json& j, const char* field) {
  if (!j.is_string())
    throw ParseError(std::string("certificate: field '") + field +
                     "' must be a decimal string");
  try {
    return Int(j.get<std::string>());
  } catch (const std::exception&) {
    throw ParseError(std::string("certificate: malformed integer in '") +
                     field + "'");
  }
}

json vector_to_json(const IntVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(int_str(v(i)));
  return out;
}

IntVector vector_from_json(const json& j, const char* field) {
  if (!j.is_array())
    throw ParseError(std::string("certificate: field '") + field +
                     "' must be an array");
  IntVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = parse_int(j[i], field);
  return v;
}

json matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("certificate: Q must be a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  RatMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols)
      throw ParseError("certificate: ragged Q rows");
    for (Index c = 0; c < cols; ++c)
      m(i, c) = parse_rational(j[i][c].get<std::string>());
  }
  return m;
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::controllable, Family::almost_controllable_asymmetric,
                   Family::almost_controllable_symmetric, Family::other})
    if (name == family_name(f)) return f;
  throw ParseError("certificate: unknown family '" + name + "'");
}

Verdict verdict_from_name(const std::string& name) {
  for (Verdict v : {Verdict::dgs_certified, Verdict::dgs_certified_extended,
                    Verdict::not_dgs, Verdict::unknown})
    if (name == verdict_name(v)) return v;
  throw ParseError("certificate: unknown verdict '" + name + "'");
}

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end())
    throw ParseError(std::string("certificate: missing field '") + field + "'");
  return *it;
}

}  // namespace

json certificate_to_json(const DgsCertificate& cert,
                         const std::optional<std::string>& generated_at) {
  json doc;
  doc["schema"] = certificate_schema;
  if (generated_at) doc["generated_at"] = *generated_at;
  doc["graph"] = {{"n", cert.graph.order()},
                  {"graph6", emit_graph6(cert.graph)}};
  doc["verdict"] = std::string(verdict_name(cert.verdict));

  json cls;
  cls["rank_q"] = cert.cls.rank_q;
  cls["family"] = std::string(family_name(cert.cls.family));
  cls["in_f_n"] = cert.cls.in_f_n;
  cls["in_f_n_star"] = cert.cls.in_f_n_star;
  if (cert.cls.b) cls["b"] = int_str(*cert.cls.b);
  if (cert.cls.twins) {
    const TwinInfo& t = *cert.cls.twins;
    cls["twins"] = {{"tau", t.tau + 1},  // 1-based labels in documents
                    {"tau_prime", t.tau_prime + 1},
                    {"adjacent", t.adjacent},
                    {"lambda1", t.lambda1}};
  }
  json snf;
  snf["rows"] = cert.cls.snf.rows;
  snf["cols"] = cert.cls.snf.cols;
  json factors = json::array();
  for (const Int& d : cert.cls.snf.invariant_factors)
    factors.push_back(int_str(d));
  snf["invariant_factors"] = std::move(factors);
  cls["snf_w"] = std::move(snf);
  doc["class"] = std::move(cls);

  json evidence = json::array();
  for (const PrimeEvidence& ev : cert.evidence) {
    json e;
    e["p"] = int_str(ev.p);
    e["lambda0"] = int_str(ev.lambda0);
    e["lambda1"] = ev.lambda1;
    e["addcon_holds"] = ev.addcon_holds;
    if (ev.refutation) {
      const MainpRefutation& r = *ev.refutation;
      json m;
      m["qr_value"] = int_str(r.qr_value);
      m["qr_is_residue"] = r.qr_is_residue;
      if (r.c0) m["c0"] = int_str(*r.c0);
      if (r.gamma0) m["gamma0"] = vector_to_json(*r.gamma0);
      if (r.quadform_mod_p2) m["quadform_mod_p2"] = int_str(*r.quadform_mod_p2);
      m["refuted_by"] = r.refuted_by;
      e["mainp_refuted"] = std::move(m);
    }
    evidence.push_back(std::move(e));
  }
  doc["evidence"] = std::move(evidence);

  if (cert.counterexample) {
    const Counterexample& cx = *cert.counterexample;
    json c;
    c["mate_graph6"] = emit_graph6(cx.mate);
    if (cx.q) c["q"] = matrix_to_json(*cx.q);
    if (cx.q_level) c["q_level"] = int_str(*cx.q_level);
    doc["counterexample"] = std::move(c);
  }
  if (cert.fullbr_ok) doc["fullbr_ok"] = *cert.fullbr_ok;
  if (cert.w0_dn) doc["w0_dn"] = int_str(*cert.w0_dn);
  return doc;
}

DgsCertificate certificate_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("certificate: document is not an object");
  if (require(doc, "schema").get<std::string>() != certificate_schema)
    throw ParseError("certificate: unsupported schema version");

  DgsCertificate cert;
  const json& jg = require(doc, "graph");
  cert.graph = parse_graph6(require(jg, "graph6").get<std::string>());
  if (require(jg, "n").get<int>() != cert.graph.order())
    throw ParseError("certificate: graph order disagrees with graph6 body");
  cert.verdict = verdict_from_name(require(doc, "verdict").get<std::string>());

  const json& jc = require(doc, "class");
  cert.cls.rank_q = require(jc, "rank_q").get<Index>();
  cert.cls.family = family_from_name(require(jc, "family").get<std::string>());
  cert.cls.in_f_n = require(jc, "in_f_n").get<bool>();
  cert.cls.in_f_n_star = require(jc, "in_f_n_star").get<bool>();
  if (jc.contains("b")) cert.cls.b = parse_int(jc["b"], "b");
  if (jc.contains("twins")) {
    const json& jt = jc["twins"];
    TwinInfo t;
    t.tau = require(jt, "tau").get<int>() - 1;
    t.tau_prime = require(jt, "tau_prime").get<int>() - 1;
    t.adjacent = require(jt, "adjacent").get<bool>();
    t.lambda1 = require(jt, "lambda1").get<int>();
    if (t.tau < 0 || t.tau_prime <= t.tau || t.tau_prime >= cert.graph.order())
      throw ParseError("certificate: twin labels out of range");
    t.alpha = IntVector::Zero(cert.graph.order());
    t.alpha(t.tau) = -1;
    t.alpha(t.tau_prime) = 1;
    cert.cls.twins = std::move(t);
  }
  const json& js = require(jc, "snf_w");
  cert.cls.snf.rows = require(js, "rows").get<Index>();
  cert.cls.snf.cols = require(js, "cols").get<Index>();
  for (const json& d : require(js, "invariant_factors"))
    cert.cls.snf.invariant_factors.push_back(parse_int(d, "invariant_factors"));

  for (const json& je : require(doc, "evidence")) {
    PrimeEvidence ev;
    ev.p = parse_int(require(je, "p"), "p");
    ev.lambda0 = parse_int(require(je, "lambda0"), "lambda0");
    ev.lambda1 = require(je, "lambda1").get<int>();
    ev.addcon_holds = require(je, "addcon_holds").get<bool>();
    if (je.contains("mainp_refuted")) {
      const json& jm = je["mainp_refuted"];
      MainpRefutation r;
      r.qr_value = parse_int(require(jm, "qr_value"), "qr_value");
      r.qr_is_residue = require(jm, "qr_is_residue").get<bool>();
      if (jm.contains("c0")) r.c0 = parse_int(jm["c0"], "c0");
      if (jm.contains("gamma0"))
        r.gamma0 = vector_from_json(jm["gamma0"], "gamma0");
      if (jm.contains("quadform_mod_p2"))
        r.quadform_mod_p2 = parse_int(jm["quadform_mod_p2"], "quadform_mod_p2");
      r.refuted_by = require(jm, "refuted_by").get<std::string>();
      ev.refutation = std::move(r);
    }
    cert.evidence.push_back(std::move(ev));
  }

  if (doc.contains("counterexample")) {
    const json& jx = doc["counterexample"];
    Counterexample cx;
    cx.mate = parse_graph6(require(jx, "mate_graph6").get<std::string>());
    if (jx.contains("q")) cx.q = matrix_from_json(jx["q"]);
    if (jx.contains("q_level")) cx.q_level = parse_int(jx["q_level"], "q_level");
    cert.counterexample = std::move(cx);
  }
  if (doc.contains("fullbr_ok")) cert.fullbr_ok = doc["fullbr_ok"].get<bool>();
  if (doc.contains("w0_dn")) cert.w0_dn = parse_int(doc["w0_dn"], "w0_dn");
  return cert;
}

}  // namespace dgs
