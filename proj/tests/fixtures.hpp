#pragma once

#include <string>
#include <vector>

#include "dgs/graph.hpp"
#include "dgs/numeric.hpp"

// The four graphs used as golden fixtures throughout the test suites,
// keyed by the order they appear in: a 5-vertex rank-4 graph with a
// non-adjacent twin pair, a 9-vertex graph admitting a level-3 similarity
// mate, and the 10- and 13-vertex graphs whose walk-matrix invariant
// factors carry large odd parts.
namespace fixtures {

inline dgs::Graph example5() {
  return dgs::graph_from_adjacency_rows({
      "01000",
      "10100",
      "01011",
      "00100",
      "00100",
  });
}

inline dgs::Graph example9() {
  return dgs::graph_from_adjacency_rows({
      "010011110",
      "100011110",
      "000010011",
      "000001000",
      "111000100",
      "110100110",
      "110011001",
      "111001001",
      "001000110",
  });
}

/// The level-3 regular rational orthogonal matrix paired with example9:
/// numerators of 3 Q.
inline dgs::IntMatrix example9_q_numerators() {
  dgs::IntMatrix m(9, 9);
  m << 2, -1, -1, 1, 1, 1, 0, 0, 0,
       0, 0, 0, 0, 0, 0, 3, 0, 0,
      -1, 2, -1, 1, 1, 1, 0, 0, 0,
       1, 1, 1, 2, -1, -1, 0, 0, 0,
       1, 1, 1, -1, 2, -1, 0, 0, 0,
      -1, -1, 2, 1, 1, 1, 0, 0, 0,
       1, 1, 1, -1, -1, 2, 0, 0, 0,
       0, 0, 0, 0, 0, 0, 0, 3, 0,
       0, 0, 0, 0, 0, 0, 0, 0, 3;
  return m;
}

inline dgs::RatMatrix example9_q() {
  dgs::IntMatrix num = example9_q_numerators();
  dgs::RatMatrix q(9, 9);
  for (dgs::Index i = 0; i < 9; ++i)
    for (dgs::Index j = 0; j < 9; ++j) {
      q(i, j) = dgs::Rat(num(i, j), 3);
      q(i, j).canonicalize();
    }
  return q;
}

inline dgs::Graph example10() {
  return dgs::graph_from_adjacency_rows({
      "0101000000",
      "1001000000",
      "0000101111",
      "1100110110",
      "0011000110",
      "0001001000",
      "0010010101",
      "0011101001",
      "0011100001",
      "0010001110",
  });
}

inline dgs::Graph example13() {
  return dgs::graph_from_adjacency_rows({
      "0100011111001",
      "1000011111001",
      "0001000010011",
      "0010001111100",
      "0000000111110",
      "1100000010011",
      "1101000100111",
      "1101101000000",
      "1111110000010",
      "1101100000110",
      "0001101001000",
      "0010111011000",
      "1110011000000",
  });
}

/// Walk matrix of example5 as printed alongside it.
inline dgs::IntMatrix example5_walk() {
  dgs::IntMatrix w(5, 5);
  w << 1, 1, 2, 4, 6,
       1, 2, 4, 6, 14,
       1, 3, 4, 10, 14,
       1, 1, 3, 4, 10,
       1, 1, 3, 4, 10;
  return w;
}

inline dgs::IntMatrix example5_w0() {
  dgs::IntMatrix m(5, 5);
  m << 1, 1, 2, 4, 0,
       1, 2, 4, 6, 0,
       1, 3, 4, 10, 0,
       1, 1, 3, 4, 1,
       1, 1, 3, 4, -1;
  return m;
}

inline dgs::IntMatrix example5_w1() {
  dgs::IntMatrix m(5, 5);
  m << 1, 1, 2, 4, 0,
       1, 2, 4, 6, 0,
       1, 3, 4, 10, 0,
       1, 1, 3, 4, -1,
       1, 1, 3, 4, 1;
  return m;
}

inline dgs::IntVector example13_beta5() {
  dgs::IntVector b(13);
  b << 2, 2, 1, 0, 0, 2, 2, 4, 0, 2, 1, 3, 1;
  return b;
}

inline dgs::IntVector example13_gamma0() {
  dgs::IntVector g(13);
  g << 1, 3, 1, 0, 0, 2, 2, 4, 0, 2, 1, 3, 1;
  return g;
}

inline dgs::Graph k2() {
  return dgs::graph_from_adjacency_rows({"01", "10"});
}

inline dgs::Graph path(int n) {
  dgs::Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1, true);
  return g;
}

inline dgs::Graph cycle(int n) {
  dgs::Graph g = path(n);
  g.set_edge(n - 1, 0, true);
  return g;
}

inline dgs::Graph complete(int n) {
  dgs::Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, true);
  return g;
}

inline dgs::Graph empty(int n) { return dgs::Graph(n); }

}  // namespace fixtures
