#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgs/numeric.hpp"

namespace dgs {

/// Simple undirected graph on at most 62 vertices (graph6 short form).
/// Vertices are 0-based internally; reports and serialized documents use
/// the 1-based labels of the printed matrices.
class Graph {
 public:
  static constexpr int max_order = 62;

  Graph() = default;
  explicit Graph(int n);

  int order() const { return n_; }
  bool edge(int u, int v) const;
  void set_edge(int u, int v, bool present);
  std::uint64_t neighbor_mask(int v) const { return adj_[v]; }
  int degree(int v) const;
  int edge_count() const;

  IntMatrix adjacency_matrix() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<std::uint64_t> adj_;
};

/// Build a graph from textual 0/1 rows ("01010", "10100", ...). Spaces and
/// commas inside a row are ignored. Requires symmetry and a zero diagonal.
Graph graph_from_adjacency_rows(const std::vector<std::string>& rows);

Graph complement(const Graph& g);

// --- graph6 (short form, n <= 62) -----------------------------------------

Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

/// One graph per line; blank lines and lines starting with '#' are skipped.
/// Parse failures are rethrown with the 1-based line number in the message.
std::vector<Graph> read_graph6_file(const std::string& path);
std::vector<Graph> read_graph6_stream(std::istream& in,
                                      const std::string& source_name);

// --- twins -----------------------------------------------------------------

/// A transposition-automorphism pair tau < tau_prime together with the
/// derived quantities: lambda1 = -1 iff the twins are adjacent, and the
/// signed indicator vector alpha (-1 at tau, +1 at tau_prime).
struct TwinInfo {
  int tau = 0;
  int tau_prime = 0;
  bool adjacent = false;
  int lambda1 = 0;
  IntVector alpha;
};

/// `unique` holds the pair when exactly one exists. `multiple` is the
/// ambiguity signal: the caller must not classify such a graph as having
/// exactly one 2-element orbit.
struct TwinScan {
  std::optional<TwinInfo> unique;
  bool multiple = false;
  std::vector<std::pair<int, int>> pairs;
};

TwinScan find_twins(const Graph& g);

// --- spectra ---------------------------------------------------------------

/// Characteristic polynomials of the graph and of its complement; equality
/// of both is generalized cospectrality.
struct GeneralizedCharPolys {
  std::vector<Int> graph;
  std::vector<Int> complement;

  friend bool operator==(const GeneralizedCharPolys&,
                         const GeneralizedCharPolys&) = default;
};

GeneralizedCharPolys generalized_char_polys(const Graph& g);

bool generalized_cospectral(const Graph& g, const Graph& h);

// --- oracles ---------------------------------------------------------------

/// Backtracking isomorphism test with degree and neighbor-degree-multiset
/// pruning. Returns a mapping perm with perm[u] = image of u, such that
/// h.edge(perm[u], perm[v]) == g.edge(u, v). Oracle-scale only: orders
/// above `max_isomorphism_order` raise ScaleError.
inline constexpr int max_isomorphism_order = 12;
std::optional<std::vector<int>> is_isomorphic(const Graph& g, const Graph& h);

/// Exactly one representative per isomorphism class, canonicalized by the
/// minimum adjacency bit string over all vertex permutations. Hard-bounded
/// at n <= 6; larger catalogues must be ingested as graph6 corpora.
inline constexpr int max_enumeration_order = 6;
const std::vector<Graph>& enumerate_all_graphs(int n);

}  // namespace dgs
