#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dgs/certificate_io.hpp"
#include "dgs/dgs_engine.hpp"
#include "dgs/walk.hpp"

namespace dgs::cli {
namespace {

struct GlobalOptions {
  int jobs = 1;
  bool no_timestamp = false;
  bool json = false;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void print_header(std::ostream& out, const GlobalOptions& global,
                  const std::string& command) {
  if (global.json) return;
  out << "# dgs " << command << "\n";
  if (!global.no_timestamp) out << "# generated: " << utc_timestamp() << "\n";
}

/// Fan-out over [0, count) with results merged back in input order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, int jobs,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> results(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::exception_ptr> errors(count);
  const int workers = std::min<std::size_t>(jobs, count);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          results[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < count; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  return results;
}

Graph parse_inline_matrix(const std::string& text) {
  std::vector<std::string> rows;
  std::string row;
  std::istringstream in(text);
  while (std::getline(in, row, ';')) rows.push_back(row);
  return graph_from_adjacency_rows(rows);
}

struct InputGraphs {
  std::vector<Graph> graphs;
  std::vector<std::string> sources;  // graph6 or "inline"
};

InputGraphs load_inputs(const std::string& file, const std::string& inline_rows) {
  InputGraphs in;
  if (!inline_rows.empty()) {
    in.graphs.push_back(parse_inline_matrix(inline_rows));
    in.sources.push_back("inline");
  }
  if (!file.empty()) {
    auto graphs = read_graph6_file(file);
    for (auto& g : graphs) {
      in.sources.push_back(emit_graph6(g));
      in.graphs.push_back(std::move(g));
    }
  }
  return in;
}

std::string join_ints(const std::vector<Int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].get_str();
  }
  return out;
}

std::string format_vector(const IntVector& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v(i).get_str();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyReport {
  GraphClass cls;
  WalkBundle bundle;
};

void print_classify_text(std::ostream& out, std::size_t index,
                         const std::string& source, const ClassifyReport& r) {
  const int n = r.bundle.graph.order();
  out << "graph " << (index + 1) << "  n=" << n << "  g6=" << source << "\n";
  out << "  family: " << family_name(r.cls.family) << "   rank_Q=" << r.cls.rank_q
      << "  rank_2=" << r.bundle.rank_2 << "\n";
  out << "  snf(W): " << join_ints(r.cls.snf.invariant_factors) << "\n";
  if (r.cls.twins) {
    const TwinInfo& t = *r.cls.twins;
    out << "  twins: (" << (t.tau + 1) << ", " << (t.tau_prime + 1)
        << ")  adjacent=" << (t.adjacent ? "yes" : "no")
        << "  lambda1=" << t.lambda1 << "\n";
  } else if (r.bundle.multiple_twin_pairs) {
    out << "  twins: multiple pairs\n";
  } else {
    out << "  twins: none\n";
  }
  if (r.bundle.xi) {
    out << "  xi: " << format_vector(*r.bundle.xi) << "\n";
    out << "  xi/2^" << (n / 2 - 1 > 0 ? n / 2 - 1 : 0) << ": "
        << format_vector(*r.bundle.xi_over_2k) << "\n";
  }
  out << "  F_n: " << (r.cls.in_f_n ? "yes" : "no");
  if (r.cls.b) out << " (b = " << r.cls.b->get_str() << ")";
  out << "   F_n*: " << (r.cls.in_f_n_star ? "yes" : "no") << "\n";
}

nlohmann::json classify_json(std::size_t index, const std::string& source,
                             const ClassifyReport& r) {
  nlohmann::json j;
  j["index"] = index + 1;
  j["n"] = r.bundle.graph.order();
  j["graph6"] = emit_graph6(r.bundle.graph);
  j["source"] = source;
  j["family"] = std::string(family_name(r.cls.family));
  j["rank_q"] = r.cls.rank_q;
  j["rank_2"] = r.bundle.rank_2;
  nlohmann::json snf = nlohmann::json::array();
  for (const Int& d : r.cls.snf.invariant_factors) snf.push_back(d.get_str());
  j["snf_w"] = std::move(snf);
  if (r.cls.twins)
    j["twins"] = {{"tau", r.cls.twins->tau + 1},
                  {"tau_prime", r.cls.twins->tau_prime + 1},
                  {"adjacent", r.cls.twins->adjacent},
                  {"lambda1", r.cls.twins->lambda1}};
  if (r.bundle.xi) {
    nlohmann::json xi = nlohmann::json::array();
    for (Index i = 0; i < r.bundle.xi->size(); ++i)
      xi.push_back((*r.bundle.xi)(i).get_str());
    j["xi"] = std::move(xi);
    nlohmann::json xs = nlohmann::json::array();
    for (Index i = 0; i < r.bundle.xi_over_2k->size(); ++i)
      xs.push_back((*r.bundle.xi_over_2k)(i).get_str());
    j["xi_scaled"] = std::move(xs);
  }
  j["in_f_n"] = r.cls.in_f_n;
  j["in_f_n_star"] = r.cls.in_f_n_star;
  if (r.cls.b) j["b"] = r.cls.b->get_str();
  return j;
}

int cmd_classify(const GlobalOptions& global, const std::string& file,
                 const std::string& inline_rows, std::ostream& out) {
  InputGraphs in = load_inputs(file, inline_rows);
  print_header(out, global, "classify");
  auto reports = parallel_map<ClassifyReport>(
      in.graphs.size(), global.jobs, [&](std::size_t i) {
        return ClassifyReport{classify(in.graphs[i]),
                              make_walk_bundle(in.graphs[i])};
      });
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (global.json)
      out << classify_json(i, in.sources[i], reports[i]).dump() << "\n";
    else
      print_classify_text(out, i, in.sources[i], reports[i]);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// check-dgs

int cmd_check_dgs(const GlobalOptions& global, const std::string& file,
                  const std::string& inline_rows,
                  const std::string& mate_corpus_file, bool enumerate_mates,
                  const std::string& out_dir, std::ostream& out) {
  InputGraphs in = load_inputs(file, inline_rows);

  std::vector<Graph> mates;
  DecideOptions opts;
  if (!mate_corpus_file.empty()) {
    mates = read_graph6_file(mate_corpus_file);
    opts.mate_corpus = &mates;
  }
  opts.enumerate_mates = enumerate_mates;

  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

  print_header(out, global, "check-dgs");
  auto certs = parallel_map<DgsCertificate>(
      in.graphs.size(), global.jobs,
      [&](std::size_t i) { return decide_dgs(in.graphs[i], opts); });

  const std::optional<std::string> stamp =
      global.no_timestamp ? std::nullopt
                          : std::make_optional(utc_timestamp());
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const DgsCertificate& cert = certs[i];
    nlohmann::json doc = certificate_to_json(cert, stamp);
    if (!out_dir.empty()) {
      std::ostringstream name;
      name << "cert-" << std::setw(6) << std::setfill('0') << (i + 1)
           << ".json";
      std::ofstream f(std::filesystem::path(out_dir) / name.str());
      f << doc.dump(2) << "\n";
    }
    if (global.json) {
      out << doc.dump() << "\n";
      continue;
    }
    out << "graph " << (i + 1) << "  n=" << cert.graph.order()
        << "  g6=" << in.sources[i]
        << "  family=" << family_name(cert.cls.family);
    if (cert.cls.b) out << "  b=" << cert.cls.b->get_str();
    out << "  verdict=" << verdict_name(cert.verdict) << "\n";
    for (const PrimeEvidence& ev : cert.evidence) {
      out << "    p=" << ev.p.get_str() << "  lambda0=" << ev.lambda0.get_str()
          << "  lambda1=" << ev.lambda1
          << "  addcon=" << (ev.addcon_holds ? "holds" : "fails");
      if (ev.refutation)
        out << "  refuted_by=" << ev.refutation->refuted_by;
      else if (!ev.addcon_holds)
        out << "  unrefuted";
      out << "\n";
    }
    if (cert.counterexample) {
      out << "    mate=" << emit_graph6(cert.counterexample->mate);
      if (cert.counterexample->q_level)
        out << "  level=" << cert.counterexample->q_level->get_str();
      out << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// census

struct CensusRow {
  int n = 0;
  long total_graphs = 0;
  long h_n = 0;
  long h_n_asym = 0;
  long h_n_sym = 0;
};

CensusRow census_of(const std::vector<Graph>& graphs, int n, int jobs) {
  CensusRow row;
  row.n = n;
  row.total_graphs = static_cast<long>(graphs.size());
  // 0 = outside H_n, 1 = asymmetric, 2 = one twin pair
  auto kinds = parallel_map<int>(graphs.size(), jobs, [&](std::size_t i) {
    const Graph& g = graphs[i];
    if (rank_rational(walk_matrix(g)) != g.order() - 1) return 0;
    TwinScan scan = find_twins(g);
    if (scan.unique) return 2;
    if (scan.multiple)
      throw InternalError("census: multiple twin pairs in a rank-(n-1) graph");
    return 1;
  });
  for (int k : kinds) {
    if (k == 0) continue;
    ++row.h_n;
    if (k == 1)
      ++row.h_n_asym;
    else
      ++row.h_n_sym;
  }
  return row;
}

int cmd_census(const GlobalOptions& global, int order,
               const std::string& corpus, std::ostream& out) {
  CensusRow row;
  if (!corpus.empty()) {
    std::vector<Graph> graphs = read_graph6_file(corpus);
    if (graphs.empty()) throw ArgumentError("census: corpus is empty");
    const int n = graphs.front().order();
    for (const Graph& g : graphs)
      if (g.order() != n)
        throw ArgumentError("census: corpus mixes graph orders");
    row = census_of(graphs, n, global.jobs);
  } else {
    if (order < 1)
      throw ArgumentError("census: give an order or a --corpus file");
    if (order > max_enumeration_order)
      throw ScaleError(
          "census: built-in enumeration is bounded by n <= 6; supply an "
          "external graph6 corpus via --corpus");
    row = census_of(enumerate_all_graphs(order), order, global.jobs);
  }

  print_header(out, global, "census");
  if (global.json) {
    nlohmann::json j{{"n", row.n},
                     {"total_graphs", row.total_graphs},
                     {"h_n", row.h_n},
                     {"h_n_asym", row.h_n_asym},
                     {"h_n_sym", row.h_n_sym}};
    out << j.dump() << "\n";
  } else {
    out << "order " << row.n << ": graphs=" << row.total_graphs
        << " almost_controllable=" << row.h_n << " asymmetric=" << row.h_n_asym
        << " symmetric=" << row.h_n_sym << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// q-matrix

void print_rat_matrix(std::ostream& out, const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    out << "  ";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << format_rational(m(i, j));
    }
    out << "\n";
  }
}

int cmd_q_matrix(const GlobalOptions& global, const std::string& g6,
                 const std::string& h6, std::ostream& out) {
  const Graph g = parse_graph6(g6);
  const Graph h = parse_graph6(h6);
  if (g.order() != h.order())
    throw ArgumentError("q-matrix: graphs have different orders");
  if (rank_rational(walk_matrix(g)) != g.order() - 1)
    throw DomainError("q-matrix: first graph's walk matrix rank is not n - 1");
  if (!generalized_cospectral(g, h))
    throw DomainError("q-matrix: not generalized cospectral");

  RationalOrthogonalSolution sol = theorem3_solutions(g, h);
  print_header(out, global, "q-matrix");
  if (global.json) {
    nlohmann::json j;
    j["level0"] = sol.level0.get_str();
    j["level1"] = sol.level1.get_str();
    auto dump = [](const RatMatrix& m) {
      nlohmann::json rows = nlohmann::json::array();
      for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index c = 0; c < m.cols(); ++c)
          row.push_back(format_rational(m(i, c)));
        rows.push_back(std::move(row));
      }
      return rows;
    };
    j["q0"] = dump(sol.q0);
    j["q1"] = dump(sol.q1);
    out << j.dump() << "\n";
    return 0;
  }
  out << "Q0 (level " << sol.level0.get_str() << "):\n";
  print_rat_matrix(out, sol.q0);
  out << "Q1 (level " << sol.level1.get_str() << "):\n";
  print_rat_matrix(out, sol.q1);
  return 0;
}

// ---------------------------------------------------------------------------
// mate-scan

int cmd_mate_scan(const GlobalOptions& global, const std::string& corpus,
                  std::ostream& out) {
  std::vector<Graph> graphs = read_graph6_file(corpus);
  print_header(out, global, "mate-scan");
  if (graphs.empty()) {
    if (!global.json) out << "total pairs: 0\n";
    return 0;
  }
  const int n = graphs.front().order();
  for (const Graph& g : graphs)
    if (g.order() != n)
      throw ArgumentError("mate-scan: corpus mixes graph orders");
  if (n > max_isomorphism_order)
    throw ScaleError("mate-scan: order exceeds the isomorphism oracle bound");

  auto keys = parallel_map<GeneralizedCharPolys>(
      graphs.size(), global.jobs,
      [&](std::size_t i) { return generalized_char_polys(graphs[i]); });

  long pair_count = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      if (!(keys[i] == keys[j])) continue;
      if (is_isomorphic(graphs[i], graphs[j])) continue;
      ++pair_count;
      std::optional<RationalOrthogonalSolution> sol;
      if (rank_rational(walk_matrix(graphs[i])) == n - 1)
        sol = theorem3_solutions(graphs[i], graphs[j]);
      if (global.json) {
        nlohmann::json rec{{"i", i + 1},
                           {"j", j + 1},
                           {"graph6_i", emit_graph6(graphs[i])},
                           {"graph6_j", emit_graph6(graphs[j])}};
        if (sol) {
          rec["level0"] = sol->level0.get_str();
          rec["level1"] = sol->level1.get_str();
        }
        out << rec.dump() << "\n";
      } else {
        out << "pair (" << (i + 1) << ", " << (j + 1)
            << ")  " << emit_graph6(graphs[i]) << "  " << emit_graph6(graphs[j])
            << "  generalized-cospectral non-isomorphic";
        if (sol)
          out << "  levels=(" << sol->level0.get_str() << ", "
              << sol->level1.get_str() << ")";
        out << "\n";
      }
    }
  if (!global.json) out << "total pairs: " << pair_count << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify-cert

int cmd_verify_cert(const GlobalOptions& global,
                    const std::vector<std::string>& files,
                    const std::string& graph6_override, std::ostream& out) {
  print_header(out, global, "verify-cert");
  bool all_ok = true;
  for (const std::string& file : files) {
    std::ifstream f(file);
    if (!f) throw ParseError("cannot open certificate: " + file);
    nlohmann::json doc;
    try {
      f >> doc;
    } catch (const std::exception& e) {
      throw ParseError("certificate " + file + ": invalid JSON: " + e.what());
    }
    DgsCertificate cert = certificate_from_json(doc);
    const Graph g = graph6_override.empty() ? cert.graph
                                            : parse_graph6(graph6_override);
    VerificationResult vr = verify_certificate(cert, g);
    if (global.json) {
      nlohmann::json j{{"file", file}, {"ok", vr.ok}};
      if (!vr.ok) j["discrepancy"] = vr.discrepancy;
      out << j.dump() << "\n";
    } else {
      out << (vr.ok ? "PASS  " : "FAIL  ") << file;
      if (!vr.ok) out << "  (" << vr.discrepancy << ")";
      out << "\n";
    }
    all_ok = all_ok && vr.ok;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact generalized-spectrum characterization toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--jobs", global.jobs, "worker threads for corpus scans")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", global.no_timestamp,
               "omit timestamps for byte-reproducible output");
  app.add_flag("--json", global.json, "machine-readable output");

  std::string in_file, inline_rows, mate_corpus, out_dir, corpus;
  std::string g6_a, g6_b, graph6_override;
  std::vector<std::string> cert_files;
  int census_order = 0;
  bool enumerate_mates = false;

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "walk-matrix report per graph");
  classify_cmd->add_option("file", in_file, "graph6 input file");
  classify_cmd->add_option("--inline", inline_rows,
                           "adjacency rows of 0/1 separated by ';'");

  CLI::App* check_cmd = app.add_subcommand(
      "check-dgs", "decide determination by the generalized spectrum");
  check_cmd->add_option("file", in_file, "graph6 input file");
  check_cmd->add_option("--inline", inline_rows,
                        "adjacency rows of 0/1 separated by ';'");
  check_cmd->add_option("--mate-corpus", mate_corpus,
                        "graph6 file of counterexample candidates");
  check_cmd->add_flag("--enumerate-mates", enumerate_mates,
                      "also scan the built-in n <= 6 catalogue");
  check_cmd->add_option("--out-dir", out_dir,
                        "write one certificate JSON per graph");

  CLI::App* census_cmd =
      app.add_subcommand("census", "count almost controllable graphs");
  census_cmd->add_option("order", census_order, "graph order (built-in, <= 6)");
  census_cmd->add_option("--corpus", corpus, "graph6 corpus to census instead");

  CLI::App* q_cmd = app.add_subcommand(
      "q-matrix", "the two regular rational orthogonal solutions");
  q_cmd->add_option("first", g6_a, "graph6 of the first graph")->required();
  q_cmd->add_option("second", g6_b, "graph6 of the second graph")->required();

  CLI::App* scan_cmd = app.add_subcommand(
      "mate-scan", "all generalized-cospectral non-isomorphic pairs");
  scan_cmd->add_option("corpus", corpus, "graph6 corpus file")->required();

  CLI::App* verify_cmd =
      app.add_subcommand("verify-cert", "recheck certificate documents");
  verify_cmd->add_option("files", cert_files, "certificate JSON files")
      ->required();
  verify_cmd->add_option("--graph6", graph6_override,
                         "verify against this graph instead of the embedded one");

  // let --jobs/--json/--no-timestamp appear after the subcommand too
  for (CLI::App* sub : app.get_subcommands(
           [](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (classify_cmd->parsed())
      return cmd_classify(global, in_file, inline_rows, out);
    if (check_cmd->parsed())
      return cmd_check_dgs(global, in_file, inline_rows, mate_corpus,
                           enumerate_mates, out_dir, out);
    if (census_cmd->parsed())
      return cmd_census(global, census_order, corpus, out);
    if (q_cmd->parsed()) return cmd_q_matrix(global, g6_a, g6_b, out);
    if (scan_cmd->parsed()) return cmd_mate_scan(global, corpus, out);
    if (verify_cmd->parsed())
      return cmd_verify_cert(global, cert_files, graph6_override, out);
    err << "error: no subcommand\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dgs::cli
