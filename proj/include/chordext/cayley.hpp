#pragma once

// Finite windows of Cayley graphs, Følner sets, and the combinatorial tests
// built on them.

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "chordext/config.hpp"
#include "chordext/graphs.hpp"
#include "chordext/groups.hpp"

namespace chordext::cayley {

using groups::GroupElement;
using groups::GroupSpec;
using groups::SymmetricSet;

/// Ordered list of distinct, validated elements with an index lookup.
class Window {
 public:
  Window() = default;
  /// Throws InvalidArgument on repeated or malformed elements. `radius` is the
  /// generating ball radius, or -1 for windows that are not balls.
  static Window from_elements(const GroupSpec& spec, std::vector<GroupElement> elements,
                              int radius = -1);

  int size() const { return static_cast<int>(elements_.size()); }
  int radius() const { return radius_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& operator[](int i) const { return elements_[i]; }
  std::optional<int> index_of(const GroupElement& x) const;
  bool contains(const GroupElement& x) const { return index_.count(x) != 0; }

 private:
  std::vector<GroupElement> elements_;
  std::unordered_map<GroupElement, int, groups::ElementHash> index_;
  int radius_ = -1;
};

/// Elements of word length <= radius in BFS order (sorted within a sphere).
Window ball(const GroupSpec& spec, int radius, const Caps& caps = {});

/// Edge {i,j} iff w[i]^-1 w[j] is in S.
graphs::Graph cayley_graph(const GroupSpec& spec, const SymmetricSet& s, const Window& w);

/// Steps xi_k = g_k^-1 g_{k+1} around a closed walk g_0..g_{n-1} (indices
/// mod n); their product is e.
std::vector<GroupElement> cycle_steps(const GroupSpec& spec, std::span<const GroupElement> walk);

/// True iff some cyclically consecutive product xi_k xi_{k+1} lies in S, i.e.
/// the walk has a chord between vertices two apart. Throws InvalidArgument
/// unless n >= 4, every xi_k is in S and the product is e.
bool has_two_step_chord(const GroupSpec& spec, const SymmetricSet& s,
                        std::span<const GroupElement> xi);

/// Test of S = L u L^-1 for a finite L containing e: (a) e is not a product
/// of at most `length_cap` non-identity elements of L, (b) L L^-1 = L u L^-1.
/// (a) is only checked up to the cap.
struct QuotientCriterion {
  bool holds = false;
  bool identity_free = false;    // (a) up to checked_length
  bool quotients_match = false;  // (b)
  int checked_length = 0;
  int identity_product_length = 0;         // shortest length reaching e, 0 if none
  std::vector<GroupElement> extra_quotients;  // in L L^-1 but not in L u L^-1
};

QuotientCriterion quotient_criterion(const GroupSpec& spec, std::span<const GroupElement> lambda,
                                     int length_cap, const Caps& caps = {});

struct FolnerSet {
  int parameter = 0;
  std::vector<GroupElement> elements;  // canonical order, contains e
};

/// Z^d: box [0,N)^d. Infinite dihedral: reduced words of length < N.
/// Heisenberg: 0 <= m,n < N, 0 <= p < N^2. Free groups are rejected.
FolnerSet folner_set(const GroupSpec& spec, int n, const Caps& caps = {});

/// |K symmetric-difference FK| / |K| with FK = {f k}.
double folner_ratio(const GroupSpec& spec, std::span<const GroupElement> f,
                    std::span<const GroupElement> k);

/// Sphere sizes |{x : l(x) = r}| for r = 0..rmax.
std::vector<std::size_t> sphere_profile(const GroupSpec& spec, int rmax, const Caps& caps = {});

/// Closed polygonal walk in Z^2: N steps along each longest representative
/// s_1..s_2n of the directions of S, taken in order of argument.
struct PolygonCycle {
  std::vector<GroupElement> vertices;
  std::vector<GroupElement> directions;
  int steps_per_side = 0;
  bool generates_lattice = false;  // S generates Z^2 (not just spans R^2)
};

/// Builds the polygon cycle and verifies it chordless in Gamma(Z^2, S). With
/// no N given, tries N = 2, 4, ..., 1024. Throws InvalidArgument when S is not
/// finite, symmetric, in Z^2 with 0, or spans a line; NumericalError when the
/// given N leaves a chord or, in auto mode, no N up to 1024 verifies.
PolygonCycle polygon_cycle(std::span<const GroupElement> s, std::optional<int> steps = std::nullopt);

/// Verifies the cycle chordless in the Cayley graph of S on its own vertices.
bool polygon_cycle_is_chordless(std::span<const GroupElement> s, const PolygonCycle& cycle);

}  // namespace chordext::cayley
