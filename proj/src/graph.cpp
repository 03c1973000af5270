#include "dgs/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "dgs/exact_linalg.hpp"

namespace dgs {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
  if (n < 1 || n > max_order)
    throw ArgumentError("graph order must lie in [1, 62]");
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw ArgumentError("vertex index out of range");
}

bool Graph::edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return (adj_[u] >> v) & 1u;
}

void Graph::set_edge(int u, int v, bool present) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ArgumentError("self-loops are not representable");
  const std::uint64_t bu = std::uint64_t{1} << u;
  const std::uint64_t bv = std::uint64_t{1} << v;
  if (present) {
    adj_[u] |= bv;
    adj_[v] |= bu;
  } else {
    adj_[u] &= ~bv;
    adj_[v] &= ~bu;
  }
}

int Graph::degree(int v) const {
  check_vertex(v);
  return std::popcount(adj_[v]);
}

int Graph::edge_count() const {
  int total = 0;
  for (int v = 0; v < n_; ++v) total += std::popcount(adj_[v]);
  return total / 2;
}

IntMatrix Graph::adjacency_matrix() const {
  IntMatrix a = IntMatrix::Zero(n_, n_);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if ((adj_[u] >> v) & 1u) {
        a(u, v) = 1;
        a(v, u) = 1;
      }
  return a;
}

Graph graph_from_adjacency_rows(const std::vector<std::string>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1 || n > Graph::max_order)
    throw ParseError("adjacency rows: order must lie in [1, 62]");
  std::vector<std::vector<int>> bits(n);
  for (int i = 0; i < n; ++i) {
    for (char ch : rows[i]) {
      if (ch == '0' || ch == '1')
        bits[i].push_back(ch - '0');
      else if (ch == ' ' || ch == ',' || ch == '\t')
        continue;
      else
        throw ParseError("adjacency rows: unexpected character");
    }
    if (static_cast<int>(bits[i].size()) != n)
      throw ParseError("adjacency rows: row length does not match order");
  }
  for (int i = 0; i < n; ++i) {
    if (bits[i][i] != 0)
      throw ParseError("adjacency rows: diagonal must be zero");
    for (int j = 0; j < n; ++j)
      if (bits[i][j] != bits[j][i])
        throw ParseError("adjacency rows: matrix must be symmetric");
  }
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bits[i][j]) g.set_edge(i, j, true);
  return g;
}

Graph complement(const Graph& g) {
  const int n = g.order();
  Graph c(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.edge(u, v)) c.set_edge(u, v, true);
  return c;
}

// --- graph6 ------------------------------------------------------------

Graph parse_graph6(std::string_view text) {
  if (text.empty()) throw ParseError("graph6: empty input", 0);
  if (text[0] == ':')
    throw ParseError("graph6: sparse6 input is not supported", 0);
  if (text[0] == '~')
    throw ParseError("graph6: long form (n > 62) is not supported", 0);
  const unsigned char c0 = static_cast<unsigned char>(text[0]);
  if (c0 < 63 || c0 > 126)
    throw ParseError("graph6: invalid header byte", 0);
  const int n = c0 - 63;
  if (n < 1)
    throw ParseError("graph6: order 0 is outside the supported range", 0);

  const int needed_bits = n * (n - 1) / 2;
  const std::size_t needed_bytes = 1 + (needed_bits + 5) / 6;
  if (text.size() < needed_bytes)
    throw ParseError("graph6: truncated body", text.size());
  if (text.size() > needed_bytes)
    throw ParseError("graph6: trailing bytes after body", needed_bytes);

  Graph g(n);
  int pos = 0;  // bit cursor over the column-major upper triangle
  int col = 1, row = 0;
  for (std::size_t byte = 1; byte < needed_bytes; ++byte) {
    const unsigned char raw = static_cast<unsigned char>(text[byte]);
    if (raw < 63 || raw > 126)
      throw ParseError("graph6: invalid body byte", byte);
    const unsigned value = raw - 63;
    for (int bit = 5; bit >= 0; --bit, ++pos) {
      const bool set = (value >> bit) & 1u;
      if (pos >= needed_bits) {
        if (set) throw ParseError("graph6: nonzero padding bits", byte);
        continue;
      }
      if (set) g.set_edge(row, col, true);
      if (++row == col) {
        row = 0;
        ++col;
      }
    }
  }
  return g;
}

std::string emit_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  int acc = 0, nbits = 0;
  for (int col = 1; col < n; ++col)
    for (int row = 0; row < col; ++row) {
      acc = (acc << 1) | (g.edge(row, col) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

std::vector<Graph> read_graph6_stream(std::istream& in,
                                      const std::string& source_name) {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t");
    std::string token = line.substr(begin, end - begin + 1);
    if (token[0] == '#') continue;
    try {
      graphs.push_back(parse_graph6(token));
    } catch (const ParseError& e) {
      std::ostringstream msg;
      msg << source_name << ":" << lineno << ": " << e.what()
          << " (byte " << e.offset << ")";
      throw ParseError(msg.str(), e.offset);
    }
  }
  return graphs;
}

std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_graph6_stream(in, path);
}

// --- twins -------------------------------------------------------------

TwinScan find_twins(const Graph& g) {
  const int n = g.order();
  TwinScan scan;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const std::uint64_t bu = std::uint64_t{1} << u;
      const std::uint64_t bv = std::uint64_t{1} << v;
      if ((g.neighbor_mask(u) & ~bv) == (g.neighbor_mask(v) & ~bu))
        scan.pairs.emplace_back(u, v);
    }
  if (scan.pairs.size() == 1) {
    auto [u, v] = scan.pairs.front();
    TwinInfo info;
    info.tau = u;
    info.tau_prime = v;
    info.adjacent = g.edge(u, v);
    info.lambda1 = info.adjacent ? -1 : 0;
    info.alpha = IntVector::Zero(n);
    info.alpha(u) = -1;
    info.alpha(v) = 1;
    scan.unique = std::move(info);
  } else if (scan.pairs.size() > 1) {
    scan.multiple = true;
  }
  return scan;
}

// --- spectra -------------------------------------------------------------

GeneralizedCharPolys generalized_char_polys(const Graph& g) {
  return {char_poly(g.adjacency_matrix()),
          char_poly(complement(g).adjacency_matrix())};
}

bool generalized_cospectral(const Graph& g, const Graph& h) {
  if (g.order() != h.order())
    throw ArgumentError("generalized_cospectral: orders differ");
  return generalized_char_polys(g) == generalized_char_polys(h);
}

// --- isomorphism oracle ---------------------------------------------------

namespace {

std::vector<std::vector<int>> neighbor_degree_profiles(const Graph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> prof(n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u)
      if (u != v && g.edge(u, v)) prof[v].push_back(g.degree(u));
    std::sort(prof[v].begin(), prof[v].end());
  }
  return prof;
}

struct IsoSearch {
  const Graph& g;
  const Graph& h;
  int n;
  std::vector<int> order;        // g vertices in search order
  std::vector<int> mapping;      // g vertex -> h vertex or -1
  std::vector<bool> used;        // h vertex already taken
  std::vector<std::vector<int>> candidates;  // per g vertex

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const int u = order[depth];
    for (int w : candidates[u]) {
      if (used[w]) continue;
      bool consistent = true;
      for (std::size_t d = 0; d < depth && consistent; ++d) {
        const int u2 = order[d];
        if (g.edge(u, u2) != h.edge(w, mapping[u2])) consistent = false;
      }
      if (!consistent) continue;
      mapping[u] = w;
      used[w] = true;
      if (extend(depth + 1)) return true;
      mapping[u] = -1;
      used[w] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() > max_isomorphism_order || h.order() > max_isomorphism_order)
    throw ScaleError("is_isomorphic: order exceeds the oracle bound (12)");
  if (g.order() != h.order()) return std::nullopt;
  const int n = g.order();
  if (g.edge_count() != h.edge_count()) return std::nullopt;

  auto pg = neighbor_degree_profiles(g);
  auto ph = neighbor_degree_profiles(h);
  {
    auto sg = pg;
    auto sh = ph;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  IsoSearch search{g, h, n, {}, std::vector<int>(n, -1),
                   std::vector<bool>(n, false), {}};
  search.candidates.resize(n);
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w)
      if (pg[u] == ph[w]) search.candidates[u].push_back(w);
  for (int u = 0; u < n; ++u)
    if (search.candidates[u].empty()) return std::nullopt;

  // most-constrained-first ordering, then prefer vertices adjacent to
  // already-ordered ones so the consistency check prunes early
  search.order.resize(n);
  std::iota(search.order.begin(), search.order.end(), 0);
  std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
    if (search.candidates[a].size() != search.candidates[b].size())
      return search.candidates[a].size() < search.candidates[b].size();
    return a < b;
  });

  if (!search.extend(0)) return std::nullopt;

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v &&
          g.edge(u, v) != h.edge(search.mapping[u], search.mapping[v]))
        throw InternalError("is_isomorphic: produced an invalid mapping");
  return search.mapping;
}

// --- exhaustive catalogue ---------------------------------------------------

namespace {

std::vector<Graph> enumerate_uncached(int n) {
  if (n < 1) throw ArgumentError("enumerate_all_graphs: order must be >= 1");
  if (n > max_enumeration_order)
    throw ScaleError(
        "enumerate_all_graphs: hard bound is n <= 6; ingest an external "
        "graph6 catalogue for larger orders");

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  const int m = static_cast<int>(edges.size());

  std::vector<int> edge_index(n * n, -1);
  for (int e = 0; e < m; ++e) {
    auto [i, j] = edges[e];
    edge_index[i * n + j] = e;
    edge_index[j * n + i] = e;
  }

  // per-permutation relocation table for every edge slot
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> tables;
  do {
    std::vector<int> table(m);
    for (int e = 0; e < m; ++e) {
      auto [i, j] = edges[e];
      table[e] = edge_index[perm[i] * n + perm[j]];
    }
    tables.push_back(std::move(table));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> catalogue;
  const std::uint32_t total = std::uint32_t{1} << m;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    bool canonical = true;
    for (const auto& table : tables) {
      std::uint32_t image = 0;
      std::uint32_t bits = mask;
      while (bits) {
        const int e = std::countr_zero(bits);
        bits &= bits - 1;
        image |= std::uint32_t{1} << table[e];
      }
      if (image < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    Graph g(n);
    for (int e = 0; e < m; ++e)
      if ((mask >> e) & 1u) g.set_edge(edges[e].first, edges[e].second, true);
    catalogue.push_back(std::move(g));
  }
  return catalogue;
}

}  // namespace

const std::vector<Graph>& enumerate_all_graphs(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<Graph>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, enumerate_uncached(n)).first;
  return it->second;
}

}  // namespace dgs
