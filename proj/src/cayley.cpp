#include "chordext/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chordext/errors.hpp"

namespace chordext::cayley {

namespace unchecked = groups::unchecked;
using groups::GroupKind;

// ---------------------------------------------------------------------------
// Windows and Cayley graphs

Window Window::from_elements(const GroupSpec& spec, std::vector<GroupElement> elements,
                             int radius) {
  Window w;
  w.index_.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    spec.validate(elements[i]);
    if (!w.index_.emplace(elements[i], static_cast<int>(i)).second) {
      throw InvalidArgument("window element " + elements[i].debug_string() + " is repeated");
    }
  }
  w.elements_ = std::move(elements);
  w.radius_ = radius;
  return w;
}

std::optional<int> Window::index_of(const GroupElement& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Window ball(const GroupSpec& spec, int radius, const Caps& caps) {
  std::vector<GroupElement> elements;
  for (auto& layer : groups::bfs_layers(spec, radius, caps)) {
    for (auto& x : layer) elements.push_back(std::move(x));
  }
  return Window::from_elements(spec, std::move(elements), radius);
}

namespace {

// Every member of S when S is finite.
std::optional<std::vector<GroupElement>> finite_members(const GroupSpec& spec,
                                                        const SymmetricSet& s) {
  using Set = SymmetricSet;
  const auto& rule = s.rule();
  if (const auto* r = std::get_if<Set::Explicit>(&rule)) return r->elements;
  if (const auto* r = std::get_if<Set::LengthBall>(&rule)) {
    std::vector<GroupElement> out(r->members.begin(), r->members.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  if (const auto* r = std::get_if<Set::Cross>(&rule)) {
    std::vector<GroupElement> out;
    for (int k = -r->m; k <= r->m; ++k) out.push_back(GroupElement::from_coords({k, 0}));
    for (int l = -r->n; l <= r->n; ++l) {
      if (l != 0) out.push_back(GroupElement::from_coords({0, l}));
    }
    return out;
  }
  if (const auto* r = std::get_if<Set::ExcludedPairs>(&rule)) {
    auto base = finite_members(spec, *r->base);
    if (!base) return std::nullopt;
    std::vector<GroupElement> out;
    for (auto& x : *base) {
      if (s.contains_unchecked(spec, x)) out.push_back(std::move(x));
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace

graphs::Graph cayley_graph(const GroupSpec& spec, const SymmetricSet& s, const Window& w) {
  s.check_compatible(spec);
  const int n = w.size();
  std::vector<std::vector<int>> adjacency(n);
  GroupElement e = groups::identity(spec);

  if (auto members = finite_members(spec, s)) {
    for (int i = 0; i < n; ++i) {
      for (const auto& m : *members) {
        if (m == e) continue;
        if (auto j = w.index_of(unchecked::multiply(spec, w[i], m))) adjacency[i].push_back(*j);
      }
    }
  } else if (const auto* strip = std::get_if<SymmetricSet::Strip>(&s.rule())) {
    // g(x^-1 y) = g(y) - g(x), so only pairs inside the band need testing.
    std::vector<double> level(n);
    for (int i = 0; i < n; ++i) level[i] = groups::morphism_eval(strip->morphism, spec, w[i]);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return level[a] < level[b]; });
    const double reach = strip->bound + 1e-9 * std::max(1.0, std::abs(strip->bound));
    for (int a = 0; a < n; ++a) {
      const int i = order[a];
      const GroupElement xi_inv = unchecked::inverse(spec, w[i]);
      for (int b = a + 1; b < n && level[order[b]] - level[i] < reach; ++b) {
        const int j = order[b];
        if (s.contains_unchecked(spec, unchecked::multiply(spec, xi_inv, w[j]))) {
          adjacency[i].push_back(j);
          adjacency[j].push_back(i);
        }
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const GroupElement xi_inv = unchecked::inverse(spec, w[i]);
      for (int j = i + 1; j < n; ++j) {
        if (s.contains_unchecked(spec, unchecked::multiply(spec, xi_inv, w[j]))) {
          adjacency[i].push_back(j);
          adjacency[j].push_back(i);
        }
      }
    }
  }
  for (auto& nb : adjacency) std::sort(nb.begin(), nb.end());
  return graphs::Graph::from_adjacency(std::move(adjacency));
}

// ---------------------------------------------------------------------------
// Cycles as products

std::vector<GroupElement> cycle_steps(const GroupSpec& spec, std::span<const GroupElement> walk) {
  std::vector<GroupElement> xi;
  xi.reserve(walk.size());
  for (std::size_t k = 0; k < walk.size(); ++k) {
    const auto& next = walk[(k + 1) % walk.size()];
    xi.push_back(groups::multiply(spec, groups::inverse(spec, walk[k]), next));
  }
  return xi;
}

bool has_two_step_chord(const GroupSpec& spec, const SymmetricSet& s,
                        std::span<const GroupElement> xi) {
  const std::size_t n = xi.size();
  if (n < 4) throw InvalidArgument("a cycle needs at least 4 steps");
  GroupElement product = groups::identity(spec);
  for (const auto& x : xi) {
    if (!groups::set_contains(s, spec, x)) {
      throw InvalidArgument("step " + x.debug_string() + " is not in S");
    }
    product = groups::multiply(spec, product, x);
  }
  if (!groups::is_identity(spec, product)) {
    throw InvalidArgument("steps do not multiply to e (product " + product.debug_string() + ")");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (groups::set_contains(s, spec, groups::multiply(spec, xi[k], xi[(k + 1) % n]))) return true;
  }
  return false;
}

QuotientCriterion quotient_criterion(const GroupSpec& spec, std::span<const GroupElement> lambda,
                                     int length_cap, const Caps& caps) {
  if (length_cap < 1) throw InvalidArgument("length cap must be positive");
  GroupElement e = groups::identity(spec);
  groups::ElementSet members;
  for (const auto& x : lambda) {
    spec.validate(x);
    members.insert(x);
  }
  if (!members.count(e)) throw InvalidArgument("the half set must contain e");
  std::vector<GroupElement> proper;
  for (const auto& x : members) {
    if (x != e) proper.push_back(x);
  }
  std::sort(proper.begin(), proper.end());

  QuotientCriterion out;
  // (a) products of exactly k proper elements, k = 1..cap
  groups::ElementSet frontier(proper.begin(), proper.end());
  out.checked_length = proper.empty() ? length_cap : 1;
  out.identity_free = true;
  for (int k = 2; k <= length_cap && !proper.empty(); ++k) {
    groups::ElementSet next;
    for (const auto& x : frontier) {
      for (const auto& l : proper) {
        next.insert(unchecked::multiply(spec, x, l));
        if (next.size() > caps.elements) {
          throw CapExceeded("products of length " + std::to_string(k) + " exceed " +
                            std::to_string(caps.elements) + " elements");
        }
      }
    }
    out.checked_length = k;
    if (next.count(e)) {
      out.identity_free = false;
      out.identity_product_length = k;
      break;
    }
    frontier = std::move(next);
  }

  // (b) L L^-1 against L u L^-1
  groups::ElementSet quotients;
  for (const auto& x : members) {
    for (const auto& y : members) quotients.insert(unchecked::multiply(spec, x, unchecked::inverse(spec, y)));
  }
  groups::ElementSet unions = members;
  for (const auto& x : members) unions.insert(unchecked::inverse(spec, x));
  for (const auto& q : quotients) {
    if (!unions.count(q)) out.extra_quotients.push_back(q);
  }
  std::sort(out.extra_quotients.begin(), out.extra_quotients.end());
  out.quotients_match = out.extra_quotients.empty();
  out.holds = out.identity_free && out.quotients_match;
  return out;
}

// ---------------------------------------------------------------------------
// Følner sets

FolnerSet folner_set(const GroupSpec& spec, int n, const Caps& caps) {
  if (n < 1) throw InvalidArgument("Følner parameter must be positive");
  FolnerSet out;
  out.parameter = n;
  auto check_size = [&](double count) {
    if (count > static_cast<double>(caps.elements)) {
      throw CapExceeded("Følner set of size " + std::to_string(count) + " exceeds " +
                        std::to_string(caps.elements) + " elements");
    }
  };
  switch (spec.kind()) {
    case GroupKind::kIntLattice: {
      const int d = spec.rank();
      check_size(std::pow(static_cast<double>(n), d));
      std::vector<std::int64_t> c(d, 0);
      while (true) {
        out.elements.push_back(GroupElement::from_coords(c));
        int i = d - 1;
        while (i >= 0 && ++c[i] == n) c[i--] = 0;
        if (i < 0) break;
      }
      break;
    }
    case GroupKind::kHeisenberg: {
      check_size(std::pow(static_cast<double>(n), 4));
      const std::int64_t top = static_cast<std::int64_t>(n) * n;
      for (std::int64_t m = 0; m < n; ++m) {
        for (std::int64_t k = 0; k < n; ++k) {
          for (std::int64_t p = 0; p < top; ++p) out.elements.push_back(GroupElement::from_coords({m, k, p}));
        }
      }
      break;
    }
    case GroupKind::kInfiniteDihedral: {
      out.elements.push_back(GroupElement::from_word(""));
      for (int len = 1; len < n; ++len) {
        for (char first : {'a', 'b'}) {
          std::string w;
          for (int i = 0; i < len; ++i) w.push_back(((i % 2 == 0) == (first == 'a')) ? 'a' : 'b');
          out.elements.push_back(GroupElement::from_word(std::move(w)));
        }
      }
      break;
    }
    case GroupKind::kFreeGroup:
      throw InvalidArgument("free groups are not amenable; no Følner sets exist");
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

double folner_ratio(const GroupSpec& spec, std::span<const GroupElement> f,
                    std::span<const GroupElement> k) {
  if (f.empty() || k.empty()) throw InvalidArgument("Følner ratio needs nonempty F and K");
  groups::ElementSet base;
  for (const auto& x : k) {
    spec.validate(x);
    base.insert(x);
  }
  for (const auto& x : f) spec.validate(x);
  groups::ElementSet shifted;
  for (const auto& a : f) {
    for (const auto& x : base) shifted.insert(unchecked::multiply(spec, a, x));
  }
  std::size_t diff = 0;
  for (const auto& x : shifted) diff += base.count(x) ? 0 : 1;
  for (const auto& x : base) diff += shifted.count(x) ? 0 : 1;
  return static_cast<double>(diff) / static_cast<double>(base.size());
}

std::vector<std::size_t> sphere_profile(const GroupSpec& spec, int rmax, const Caps& caps) {
  std::vector<std::size_t> out;
  for (const auto& layer : groups::bfs_layers(spec, rmax, caps)) out.push_back(layer.size());
  return out;
}

// ---------------------------------------------------------------------------
// Polygon cycles in Z^2

namespace {

struct Point {
  std::int64_t x;
  std::int64_t y;
  bool operator==(const Point&) const = default;
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    return std::hash<std::int64_t>{}(p.x) * 0x9e3779b97f4a7c15ULL ^ std::hash<std::int64_t>{}(p.y);
  }
};

std::int64_t cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

// Angle order on nonzero vectors starting from the positive x axis.
bool angle_less(const Point& a, const Point& b) {
  auto half = [](const Point& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return cross(a, b) > 0;
}

std::vector<Point> to_points(std::span<const GroupElement> s) {
  std::vector<Point> pts;
  for (const auto& e : s) {
    if (e.is_word() || e.coord_count() != 2) {
      throw InvalidArgument("polygon cycle needs elements of Z^2, got " + e.debug_string());
    }
    pts.push_back({e.coord(0), e.coord(1)});
  }
  return pts;
}

std::optional<std::pair<int, int>> find_chord(const std::vector<Point>& cycle,
                                              const std::vector<Point>& steps) {
  const int len = static_cast<int>(cycle.size());
  std::unordered_map<Point, int, PointHash> where;
  for (int k = 0; k < len; ++k) {
    if (!where.emplace(cycle[k], k).second) return std::make_pair(where[cycle[k]], k);
  }
  for (int k = 0; k < len; ++k) {
    for (const auto& s : steps) {
      auto it = where.find({cycle[k].x + s.x, cycle[k].y + s.y});
      if (it == where.end()) continue;
      int m = it->second;
      if (m != (k + 1) % len && m != (k + len - 1) % len) return std::make_pair(k, m);
    }
  }
  return std::nullopt;
}

}  // namespace

PolygonCycle polygon_cycle(std::span<const GroupElement> s, std::optional<int> steps) {
  std::vector<Point> pts = to_points(s);
  std::unordered_map<Point, int, PointHash> present;
  for (const auto& p : pts) present.emplace(p, 0);
  if (!present.count({0, 0})) throw InvalidArgument("S must contain 0");
  for (const auto& p : pts) {
    if (!present.count({-p.x, -p.y})) throw InvalidArgument("S must be symmetric");
  }
  std::vector<Point> nonzero;
  for (const auto& [p, unused] : present) {
    if (p.x != 0 || p.y != 0) nonzero.push_back(p);
  }
  std::sort(nonzero.begin(), nonzero.end(),
            [](const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  std::int64_t minors = 0;
  for (std::size_t a = 0; a < nonzero.size(); ++a) {
    for (std::size_t b = a + 1; b < nonzero.size(); ++b) {
      minors = std::gcd(minors, std::abs(cross(nonzero[a], nonzero[b])));
    }
  }
  if (minors == 0) throw InvalidArgument("S does not span the plane");

  // longest element on each oriented primitive direction
  std::unordered_map<Point, Point, PointHash> longest;
  for (const auto& p : nonzero) {
    std::int64_t g = std::gcd(std::abs(p.x), std::abs(p.y));
    Point dir{p.x / g, p.y / g};
    auto [it, inserted] = longest.emplace(dir, p);
    if (!inserted && std::abs(p.x) + std::abs(p.y) > std::abs(it->second.x) + std::abs(it->second.y)) {
      it->second = p;
    }
  }
  std::vector<Point> dirs;
  for (const auto& [unused, p] : longest) dirs.push_back(p);
  std::sort(dirs.begin(), dirs.end(), angle_less);

  PolygonCycle out;
  out.generates_lattice = minors == 1;
  for (const auto& d : dirs) out.directions.push_back(GroupElement::from_coords({d.x, d.y}));

  auto build = [&](int n) {
    std::vector<Point> cycle;
    Point at{0, 0};
    for (const auto& d : dirs) {
      for (int t = 0; t < n; ++t) {
        cycle.push_back(at);
        at = {at.x + d.x, at.y + d.y};
      }
    }
    return cycle;
  };

  std::vector<int> tries;
  if (steps) {
    if (*steps < 1) throw InvalidArgument("steps per side must be positive");
    tries.push_back(*steps);
  } else {
    for (int n = 2; n <= 1024; n *= 2) tries.push_back(n);
  }
  for (int n : tries) {
    std::vector<Point> cycle = build(n);
    auto chord = find_chord(cycle, nonzero);
    if (chord && !steps) continue;
    out.steps_per_side = n;
    out.vertices.clear();
    for (const auto& p : cycle) out.vertices.push_back(GroupElement::from_coords({p.x, p.y}));
    if (chord) {
      throw NumericalError("polygon cycle with " + std::to_string(n) +
                           " steps per side has a chord between positions " +
                           std::to_string(chord->first) + " and " + std::to_string(chord->second));
    }
    return out;
  }
  throw NumericalError("no chordless polygon cycle found for steps per side up to 1024");
}

bool polygon_cycle_is_chordless(std::span<const GroupElement> s, const PolygonCycle& cycle) {
  GroupSpec z2 = GroupSpec::int_lattice(2);
  SymmetricSet set = SymmetricSet::explicit_set(z2, std::vector<GroupElement>(s.begin(), s.end()));
  Window w;
  try {
    w = Window::from_elements(z2, cycle.vertices);
  } catch (const InvalidArgument&) {
    return false;  // repeated vertex
  }
  graphs::Graph g = cayley_graph(z2, set, w);
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  return graphs::verify_certificate(g, graphs::ChordlessCycle{order});
}

}  // namespace chordext::cayley
