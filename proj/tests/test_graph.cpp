#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dgs/graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dgs;

TEST_CASE("graph6 decoding the published layout") {
  Graph k2 = parse_graph6("A_");
  CHECK(k2.order() == 2);
  CHECK(k2.edge(0, 1));

  Graph e2 = parse_graph6("A?");
  CHECK(e2.order() == 2);
  CHECK_FALSE(e2.edge(0, 1));

  CHECK(emit_graph6(Graph(1)) == "@");
  CHECK(parse_graph6("@").order() == 1);

  // P3 on vertices 0-1-2: bits x01=1, x02=0, x12=1 -> 101000 -> 103 = 'g'
  Graph p3 = fixtures::path(3);
  CHECK(emit_graph6(p3) == "Bg");
  CHECK(parse_graph6("Bg") == p3);

  // K3: 111000 -> 119 = 'w'
  CHECK(emit_graph6(fixtures::complete(3)) == "Bw");
}

TEST_CASE("graph6 malformed inputs carry byte offsets") {
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6(":Fa@x^"), ParseError);   // sparse6
  CHECK_THROWS_AS(parse_graph6("~??"), ParseError);       // long form
  CHECK_THROWS_AS(parse_graph6("\x20??"), ParseError);    // header below 63
  CHECK_THROWS_AS(parse_graph6("B"), ParseError);          // truncated
  CHECK_THROWS_AS(parse_graph6("A_?"), ParseError);        // trailing bytes
  CHECK_THROWS_AS(parse_graph6("?"), ParseError);          // order 0

  auto offset_of = [](std::string_view s) -> long {
    try {
      parse_graph6(s);
      return -1;
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset);
    }
  };
  CHECK(offset_of("B\x08") == 1);  // invalid body byte
  CHECK(offset_of("A`") == 1);     // nonzero padding bit after the K2 edge
  CHECK(offset_of("~??") == 0);
}

TEST_CASE("graph6 round trip is the identity on the full n<=6 catalogue") {
  long count = 0;
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : enumerate_all_graphs(n)) {
      const std::string enc = emit_graph6(g);
      CHECK(parse_graph6(enc) == g);
      ++count;
    }
  CHECK(count == 1 + 2 + 4 + 11 + 34 + 156);
}

TEST_CASE("graph6 file reading skips comments and reports line numbers") {
  const std::string path = "g6_read_test.tmp";
  {
    std::ofstream f(path);
    f << "# a comment\n\nA_\n  A?  \n";
  }
  auto graphs = read_graph6_file(path);
  REQUIRE(graphs.size() == 2);
  CHECK(graphs[0].edge(0, 1));
  CHECK_FALSE(graphs[1].edge(0, 1));

  {
    std::ofstream f(path);
    f << "A_\nB\n";
  }
  try {
    read_graph6_file(path);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("complement") {
  Graph k2 = fixtures::k2();
  Graph e2 = complement(k2);
  CHECK_FALSE(e2.edge(0, 1));
  CHECK(complement(e2) == k2);

  Graph c5 = fixtures::cycle(5);
  auto iso = is_isomorphic(c5, complement(c5));
  CHECK(iso);  // C5 is self-complementary

  Graph ex5 = fixtures::example5();
  CHECK(ex5.edge_count() == 4);
  CHECK(complement(ex5).edge_count() == 6);
}

TEST_CASE("find_twins on the fixtures") {
  auto t9 = find_twins(fixtures::example9());
  REQUIRE(t9.unique);
  CHECK(t9.unique->tau == 0);
  CHECK(t9.unique->tau_prime == 1);
  CHECK(t9.unique->adjacent);
  CHECK(t9.unique->lambda1 == -1);

  auto t10 = find_twins(fixtures::example10());
  REQUIRE(t10.unique);
  CHECK(t10.unique->tau == 0);
  CHECK(t10.unique->tau_prime == 1);
  CHECK(t10.unique->adjacent);
  CHECK(t10.unique->lambda1 == -1);

  auto tp3 = find_twins(fixtures::path(3));
  REQUIRE(tp3.unique);
  CHECK(tp3.unique->tau == 0);
  CHECK(tp3.unique->tau_prime == 2);
  CHECK_FALSE(tp3.unique->adjacent);
  CHECK(tp3.unique->lambda1 == 0);
  CHECK(tp3.unique->alpha(0) == -1);
  CHECK(tp3.unique->alpha(2) == 1);
  CHECK(tp3.unique->alpha(1) == 0);

  auto tk3 = find_twins(fixtures::complete(3));
  CHECK_FALSE(tk3.unique);
  CHECK(tk3.multiple);

  auto tp4 = find_twins(fixtures::path(4));
  CHECK_FALSE(tp4.unique);
  CHECK_FALSE(tp4.multiple);
}

TEST_CASE("twin transpositions are automorphisms") {
  std::mt19937_64 rng(123);
  int with_twins = 0;
  for (int t = 0; t < 300; ++t) {
    const Graph g = oracles::random_graph(rng, 2 + (t % 7));
    for (auto [u, v] : find_twins(g).pairs) {
      ++with_twins;
      const int n = g.order();
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          auto swap_uv = [&](int x) { return x == u ? v : (x == v ? u : x); };
          CHECK(g.edge(a, b) == g.edge(swap_uv(a), swap_uv(b)));
        }
    }
  }
  CHECK(with_twins > 0);
}

TEST_CASE("generalized cospectrality") {
  Graph k2 = fixtures::k2();
  CHECK(generalized_cospectral(k2, k2));
  CHECK_FALSE(generalized_cospectral(k2, fixtures::empty(2)));
  CHECK_THROWS_AS(generalized_cospectral(k2, fixtures::empty(3)),
                  ArgumentError);
}

TEST_CASE("generalized cospectrality is reflexive and symmetric on the "
          "n=5 catalogue") {
  const auto& cat = enumerate_all_graphs(5);
  for (const Graph& g : cat) CHECK(generalized_cospectral(g, g));
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i + 1; j < cat.size(); ++j)
      CHECK(generalized_cospectral(cat[i], cat[j]) ==
            generalized_cospectral(cat[j], cat[i]));
}

TEST_CASE("is_isomorphic finds a relabeling and verifies it") {
  std::mt19937_64 rng(321);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + (t % 8);
    const Graph g = oracles::random_graph(rng, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (g.edge(a, b)) h.set_edge(perm[a], perm[b], true);

    auto found = is_isomorphic(g, h);
    REQUIRE(found);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        CHECK(g.edge(a, b) == h.edge((*found)[a], (*found)[b]));
  }
}

TEST_CASE("is_isomorphic rejects") {
  CHECK_FALSE(is_isomorphic(fixtures::k2(), fixtures::empty(2)));
  CHECK_FALSE(is_isomorphic(fixtures::path(4), fixtures::cycle(4)));
  CHECK_THROWS_AS(is_isomorphic(Graph(13), Graph(13)), ScaleError);
}

TEST_CASE("isomorphic graphs are generalized cospectral") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + (t % 6);
    const Graph g = oracles::random_graph(rng, n);
    const Graph h = oracles::random_graph(rng, n);
    if (is_isomorphic(g, h)) CHECK(generalized_cospectral(g, h));
  }
}

TEST_CASE("enumeration counts match the published table") {
  CHECK(enumerate_all_graphs(1).size() == 1);
  CHECK(enumerate_all_graphs(2).size() == 2);
  CHECK(enumerate_all_graphs(3).size() == 4);
  CHECK(enumerate_all_graphs(4).size() == 11);
  CHECK(enumerate_all_graphs(5).size() == 34);
  CHECK(enumerate_all_graphs(6).size() == 156);
  CHECK_THROWS_AS(enumerate_all_graphs(7), ScaleError);
}

TEST_CASE("enumeration is isomorph-free at n=4") {
  const auto& cat = enumerate_all_graphs(4);
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i + 1; j < cat.size(); ++j)
      CHECK_FALSE(is_isomorphic(cat[i], cat[j]));
}

TEST_CASE("adjacency row parsing") {
  CHECK(graph_from_adjacency_rows({"01", "10"}) == fixtures::k2());
  CHECK(graph_from_adjacency_rows({"0 1", "1 0"}) == fixtures::k2());
  CHECK_THROWS_AS(graph_from_adjacency_rows({"01", "100"}), ParseError);
  CHECK_THROWS_AS(graph_from_adjacency_rows({"11", "10"}), ParseError);
  CHECK_THROWS_AS(graph_from_adjacency_rows({"01", "00"}), ParseError);
  CHECK_THROWS_AS(graph_from_adjacency_rows({"0x", "10"}), ParseError);
}
