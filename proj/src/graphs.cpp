#include "chordext/graphs.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "chordext/errors.hpp"

namespace chordext::graphs {

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int n) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  adj_.resize(n);
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::from_adjacency(std::vector<std::vector<int>> adjacency) {
  Graph g;
  const int n = static_cast<int>(adjacency.size());
  std::size_t half_edges = 0;
  for (int v = 0; v < n; ++v) {
    const auto& nb = adjacency[v];
    for (std::size_t k = 0; k < nb.size(); ++k) {
      int u = nb[k];
      if (u < 0 || u >= n || u == v || (k > 0 && nb[k - 1] >= u)) {
        throw InvalidArgument("adjacency lists must be sorted, loop-free and in range");
      }
    }
    half_edges += nb.size();
  }
  for (int v = 0; v < n; ++v) {
    for (int u : adjacency[v]) {
      if (!std::binary_search(adjacency[u].begin(), adjacency[u].end(), v)) {
        throw InvalidArgument("adjacency lists are not symmetric");
      }
    }
  }
  g.adj_ = std::move(adjacency);
  g.edge_count_ = half_edges / 2;
  return g;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= size()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range [0, " +
                          std::to_string(size()) + ")");
  }
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& au = adj_[u];
  return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < size(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const int> vertices) const {
  std::vector<int> local(size(), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    check_vertex(vertices[k]);
    if (local[vertices[k]] != -1) throw InvalidArgument("repeated vertex in induced()");
    local[vertices[k]] = static_cast<int>(k);
  }
  std::vector<std::vector<int>> adjacency(vertices.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    for (int u : adj_[vertices[k]]) {
      if (local[u] >= 0) adjacency[k].push_back(local[u]);
    }
    std::sort(adjacency[k].begin(), adjacency[k].end());
  }
  return from_adjacency(std::move(adjacency));
}

bool Graph::is_clique(std::span<const int> vertices) const {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (!has_edge(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Chordality

std::vector<int> mcs_elimination_order(const Graph& g) {
  const int n = g.size();
  std::vector<int> weight(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<std::set<int>> buckets(n + 1);
  for (int v = 0; v < n; ++v) buckets[0].insert(v);
  int top = 0;
  std::vector<int> visit;
  visit.reserve(n);
  for (int step = 0; step < n; ++step) {
    while (buckets[top].empty()) --top;
    int v = *buckets[top].begin();
    buckets[top].erase(buckets[top].begin());
    visited[v] = 1;
    visit.push_back(v);
    for (int u : g.neighbors(v)) {
      if (visited[u]) continue;
      buckets[weight[u]].erase(u);
      ++weight[u];
      buckets[weight[u]].insert(u);
      top = std::max(top, weight[u]);
    }
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

namespace {

std::vector<int> positions(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  return pos;
}

struct PeoViolation {
  int vertex;
  int x;
  int y;
};

// Rose-Tarjan-Lueker test: the order is perfect iff for every v the later
// neighbours other than the earliest one, p(v), are adjacent to p(v).
std::optional<PeoViolation> find_peo_violation(const Graph& g, const std::vector<int>& order) {
  std::vector<int> pos = positions(order);
  for (int v : order) {
    int parent = -1;
    for (int u : g.neighbors(v)) {
      if (pos[u] > pos[v] && (parent == -1 || pos[u] < pos[parent])) parent = u;
    }
    if (parent == -1) continue;
    for (int u : g.neighbors(v)) {
      if (u == parent || pos[u] < pos[v]) continue;
      if (!g.has_edge(parent, u)) return PeoViolation{v, parent, u};
    }
  }
  return std::nullopt;
}

// Shortest x-y path avoiding N[v] \ {x, y}, closed through v. The path is
// induced and no interior vertex sees v, so the cycle is chordless.
std::optional<std::vector<int>> cycle_through(const Graph& g, int v, int x, int y) {
  const int n = g.size();
  std::vector<char> blocked(n, 0);
  blocked[v] = 1;
  for (int u : g.neighbors(v)) blocked[u] = 1;
  blocked[x] = blocked[y] = 0;
  std::vector<int> parent(n, -2);
  std::deque<int> queue{x};
  parent[x] = -1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == y) break;
    for (int w : g.neighbors(u)) {
      if (blocked[w] || parent[w] != -2) continue;
      // x and y are non-adjacent; skip the direct edge only if it exists.
      parent[w] = u;
      queue.push_back(w);
    }
  }
  if (parent[y] == -2) return std::nullopt;
  std::vector<int> path;
  for (int u = y; u != -1; u = parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  std::vector<int> cycle{v};
  cycle.insert(cycle.end(), path.begin(), path.end());
  return cycle;
}

bool verify_chordless_cycle(const Graph& g, const std::vector<int>& cycle) {
  const int len = static_cast<int>(cycle.size());
  if (len < 4) return false;
  std::vector<int> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.front() < 0 || sorted.back() >= g.size()) return false;
  for (int i = 0; i < len; ++i) {
    for (int j = i + 1; j < len; ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j == len - 1);
      if (g.has_edge(cycle[i], cycle[j]) != consecutive) return false;
    }
  }
  return true;
}

}  // namespace

ChordalityCertificate is_chordal(const Graph& g) {
  std::vector<int> order = mcs_elimination_order(g);
  auto violation = find_peo_violation(g, order);
  if (!violation) return PerfectEliminationOrdering{std::move(order)};

  auto cycle = cycle_through(g, violation->vertex, violation->x, violation->y);
  if (cycle && verify_chordless_cycle(g, *cycle)) return ChordlessCycle{std::move(*cycle)};

  // Every chordless cycle has a vertex whose two cycle neighbours are
  // non-adjacent and joined by the rest of the cycle outside N[v], so this
  // search always succeeds on a non-chordal graph.
  for (int v = 0; v < g.size(); ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (g.has_edge(nb[a], nb[b])) continue;
        auto c = cycle_through(g, v, nb[a], nb[b]);
        if (c && verify_chordless_cycle(g, *c)) return ChordlessCycle{std::move(*c)};
      }
    }
  }
  throw NumericalError("PEO check failed but no chordless cycle could be extracted");
}

bool verify_certificate(const Graph& g, const ChordalityCertificate& c) {
  if (const auto* peo = std::get_if<PerfectEliminationOrdering>(&c)) {
    const auto& order = peo->order;
    if (static_cast<int>(order.size()) != g.size()) return false;
    std::vector<char> seen(g.size(), 0);
    for (int v : order) {
      if (v < 0 || v >= g.size() || seen[v]) return false;
      seen[v] = 1;
    }
    return !find_peo_violation(g, order).has_value();
  }
  return verify_chordless_cycle(g, std::get<ChordlessCycle>(c).cycle);
}

// ---------------------------------------------------------------------------
// Distances, powers, trees

std::vector<int> bfs_distances(const Graph& g, int v) {
  if (v < 0 || v >= g.size()) throw InvalidArgument("vertex out of range");
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<int> distance(const Graph& g, int v, int w) {
  if (w < 0 || w >= g.size()) throw InvalidArgument("vertex out of range");
  int d = bfs_distances(g, v)[w];
  if (d < 0) return std::nullopt;
  return d;
}

Graph graph_power(const Graph& g, int n) {
  if (n < 1) throw InvalidArgument("graph power exponent must be positive");
  const int size = g.size();
  std::vector<std::vector<int>> adjacency(size);
  std::vector<int> dist(size, -1);
  for (int v = 0; v < size; ++v) {
    std::vector<int> touched{v};
    std::deque<int> queue{v};
    dist[v] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (dist[u] == n) continue;
      for (int w : g.neighbors(u)) {
        if (dist[w] != -1) continue;
        dist[w] = dist[u] + 1;
        touched.push_back(w);
        queue.push_back(w);
      }
    }
    for (int u : touched) {
      if (u != v) adjacency[v].push_back(u);
      dist[u] = -1;
    }
    std::sort(adjacency[v].begin(), adjacency[v].end());
  }
  return Graph::from_adjacency(std::move(adjacency));
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.size(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (int w : g.neighbors(members[k])) {
        if (comp[w] == -1) {
          comp[w] = comp[s];
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_tree(const Graph& g) {
  if (g.size() == 0) return false;
  return g.edge_count() + 1 == static_cast<std::size_t>(g.size()) &&
         connected_components(g).size() == 1;
}

// ---------------------------------------------------------------------------
// Cliques

std::vector<std::vector<int>> maximal_cliques_from_peo(const Graph& g, std::span<const int> peo) {
  const int n = g.size();
  std::vector<int> order(peo.begin(), peo.end());
  std::vector<int> pos = positions(order);
  std::vector<int> later_count(n, 0);
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v) {
    for (int u : g.neighbors(v)) {
      if (pos[u] > pos[v]) {
        ++later_count[v];
        if (parent[v] == -1 || pos[u] < pos[parent[v]]) parent[v] = u;
      }
    }
  }
  // {v} + later(v) is contained in {u} + later(u) exactly when p(u) = v and u
  // has one more later neighbour than v.
  std::vector<char> dominated(n, 0);
  for (int u = 0; u < n; ++u) {
    int v = parent[u];
    if (v != -1 && later_count[u] == later_count[v] + 1) dominated[v] = 1;
  }
  std::vector<std::vector<int>> cliques;
  for (int v = 0; v < n; ++v) {
    if (dominated[v]) continue;
    std::vector<int> clique{v};
    for (int u : g.neighbors(v)) {
      if (pos[u] > pos[v]) clique.push_back(u);
    }
    std::sort(clique.begin(), clique.end());
    cliques.push_back(std::move(clique));
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

namespace {

std::vector<int> intersect(const std::vector<int>& a, std::span<const int> b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void bron_kerbosch(const Graph& g, std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>& out, std::size_t cap) {
  if (p.empty() && x.empty()) {
    if (out.size() >= cap) {
      throw CapExceeded("more than " + std::to_string(cap) + " maximal cliques");
    }
    std::vector<int> clique = r;
    std::sort(clique.begin(), clique.end());
    out.push_back(std::move(clique));
    return;
  }
  // pivot maximising |P ∩ N(u)|
  int pivot = -1;
  std::size_t best = 0;
  for (const auto* set : {&p, &x}) {
    for (int u : *set) {
      std::size_t c = intersect(p, g.neighbors(u)).size();
      if (pivot == -1 || c > best) {
        pivot = u;
        best = c;
      }
    }
  }
  std::vector<int> candidates;
  auto pn = g.neighbors(pivot);
  std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
  for (int v : candidates) {
    r.push_back(v);
    bron_kerbosch(g, r, intersect(p, g.neighbors(v)), intersect(x, g.neighbors(v)), out, cap);
    r.pop_back();
    p.erase(std::lower_bound(p.begin(), p.end(), v));
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g, std::size_t cap) {
  auto cert = is_chordal(g);
  std::vector<std::vector<int>> cliques;
  if (const auto* peo = std::get_if<PerfectEliminationOrdering>(&cert)) {
    cliques = maximal_cliques_from_peo(g, peo->order);
    if (cliques.size() > cap) {
      throw CapExceeded("more than " + std::to_string(cap) + " maximal cliques");
    }
    return cliques;
  }
  std::vector<int> r;
  std::vector<int> p(g.size());
  for (int v = 0; v < g.size(); ++v) p[v] = v;
  bron_kerbosch(g, r, std::move(p), {}, cliques, cap);
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

}  // namespace chordext::graphs
