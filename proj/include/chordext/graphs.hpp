#pragma once

// Finite simple graphs with verifiable chordality certificates.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace chordext::graphs {

/// Undirected graph on vertices 0..n-1; symmetric and irreflexive. Adjacency
/// lists are kept sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
  /// Takes ownership of sorted, symmetric, loop-free adjacency lists.
  /// Throws InvalidArgument when they are not.
  static Graph from_adjacency(std::vector<std::vector<int>> adjacency);

  int size() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  /// Adds {u,v}; no-op if present. Throws on loops or out-of-range vertices.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  std::span<const int> neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

  /// Edges {i,j} with i < j in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  /// Subgraph induced on `vertices`; vertex k of the result is vertices[k].
  Graph induced(std::span<const int> vertices) const;

  bool is_clique(std::span<const int> vertices) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check_vertex(int v) const;

  std::vector<std::vector<int>> adj_;
  std::size_t edge_count_ = 0;
};

/// Vertex order in which every vertex's later neighbours form a clique.
struct PerfectEliminationOrdering {
  std::vector<int> order;
};

/// Cycle of length >= 4 whose only edges are the consecutive pairs.
struct ChordlessCycle {
  std::vector<int> cycle;
};

using ChordalityCertificate = std::variant<PerfectEliminationOrdering, ChordlessCycle>;

inline bool certifies_chordal(const ChordalityCertificate& c) {
  return std::holds_alternative<PerfectEliminationOrdering>(c);
}

/// Maximum cardinality search, lowest index first on ties. Returns the
/// reverse of the visit order, which is a PEO exactly when g is chordal.
std::vector<int> mcs_elimination_order(const Graph& g);

/// PEO when g is chordal, otherwise a verified chordless cycle.
ChordalityCertificate is_chordal(const Graph& g);

bool verify_certificate(const Graph& g, const ChordalityCertificate& c);

/// Edge {v,w} iff 1 <= d(v,w) <= n.
Graph graph_power(const Graph& g, int n);

bool is_tree(const Graph& g);

/// BFS distance; nullopt when w is unreachable from v.
std::optional<int> distance(const Graph& g, int v, int w);

/// All BFS distances from v (-1 for unreachable).
std::vector<int> bfs_distances(const Graph& g, int v);

std::vector<std::vector<int>> connected_components(const Graph& g);

/// Maximal cliques, each sorted, the list sorted lexicographically. Chordal
/// graphs use their PEO; other graphs go through Bron-Kerbosch with pivoting.
/// Throws CapExceeded when more than `cap` cliques exist.
std::vector<std::vector<int>> maximal_cliques(const Graph& g, std::size_t cap = 10000);

/// Maximal cliques of a chordal graph read off a perfect elimination ordering.
std::vector<std::vector<int>> maximal_cliques_from_peo(const Graph& g, std::span<const int> peo);

}  // namespace chordext::graphs
