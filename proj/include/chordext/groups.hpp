#pragma once

// Exact arithmetic for the concrete finitely generated groups the library
// works with: integer lattices Z^d, the integer Heisenberg group, the infinite
// dihedral group Z2*Z2 and free groups (the non-amenable control).

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "chordext/config.hpp"

namespace chordext::groups {

enum class GroupKind { kIntLattice, kHeisenberg, kInfiniteDihedral, kFreeGroup };

inline constexpr std::size_t kMaxCoords = 8;
inline constexpr int kMaxFreeRank = 4;

/// A group element in canonical encoding: an integer vector (Z^d), the triple
/// (m, n, p) of X_{m,n,p} (Heisenberg) or a reduced word (dihedral, free).
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement from_coords(std::span<const std::int64_t> coords);
  static GroupElement from_coords(std::initializer_list<std::int64_t> coords);
  static GroupElement from_word(std::string word);

  bool is_word() const { return is_word_; }
  std::span<const std::int64_t> coords() const { return {coords_.data(), size_}; }
  std::int64_t coord(std::size_t i) const { return coords_[i]; }
  std::size_t coord_count() const { return size_; }
  const std::string& word() const { return word_; }

  std::size_t hash() const;
  std::string debug_string() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);
  friend bool operator<(const GroupElement& a, const GroupElement& b);

 private:
  std::array<std::int64_t, kMaxCoords> coords_{};
  std::uint8_t size_ = 0;
  bool is_word_ = false;
  std::string word_;
};

struct ElementHash {
  std::size_t operator()(const GroupElement& x) const { return x.hash(); }
};

using ElementSet = std::unordered_set<GroupElement, ElementHash>;

/// A concrete group together with a symmetric generating set A (A = A^-1,
/// e not in A).
class GroupSpec {
 public:
  static GroupSpec int_lattice(int d);
  static GroupSpec heisenberg();
  static GroupSpec infinite_dihedral();
  static GroupSpec free_group(int rank);

  /// Same group with a custom symmetric generating set; throws
  /// InvalidArgument if A != A^-1, e in A, or an element is malformed.
  GroupSpec with_generators(std::vector<GroupElement> generators) const;

  GroupKind kind() const { return kind_; }
  /// d for Z^d, the free rank for free groups, 0 otherwise.
  int rank() const { return rank_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  bool default_generators() const { return default_generators_; }
  bool is_amenable() const { return kind_ != GroupKind::kFreeGroup; }

  /// Throws InvalidArgument when x is not a canonical element of this group.
  void validate(const GroupElement& x) const;

  /// Letters used by word groups: "ab" (dihedral) or "xXyY..." (free).
  std::string alphabet() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);

 private:
  GroupSpec(GroupKind kind, int rank);

  GroupKind kind_ = GroupKind::kIntLattice;
  int rank_ = 1;
  std::vector<GroupElement> generators_;
  bool default_generators_ = true;
};

std::string kind_name(GroupKind kind);

GroupElement identity(const GroupSpec& spec);
GroupElement multiply(const GroupSpec& spec, const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupSpec& spec, const GroupElement& x);
bool is_identity(const GroupSpec& spec, const GroupElement& x);

/// Arithmetic without input validation, for hot loops over elements that were
/// validated once up front.
namespace unchecked {
GroupElement multiply(const GroupSpec& spec, const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupSpec& spec, const GroupElement& x);
}  // namespace unchecked

/// Reduces an arbitrary word over the group's alphabet to canonical form.
std::string reduce_word(const GroupSpec& spec, std::string_view word);

/// Word length with respect to the generating set. Closed forms are used for
/// default generators of Z^d (l1 norm) and the word groups (reduced length);
/// everything else goes through bfs_word_length.
int word_length(const GroupSpec& spec, const GroupElement& x, const Caps& caps = {});

/// BFS spheres S_0..S_radius of the Cayley graph of the generating set, each
/// sorted canonically. Throws CapExceeded past caps.radius or caps.elements.
std::vector<std::vector<GroupElement>> bfs_layers(const GroupSpec& spec, int radius,
                                                  const Caps& caps = {});

/// Distance from e in the Cayley graph of the generating set, by BFS.
/// Throws CapExceeded past caps.radius or caps.elements.
int bfs_word_length(const GroupSpec& spec, const GroupElement& x, const Caps& caps = {});

/// Group morphism to the ordered group R: x -> sum alpha_i x_i on Z^d,
/// X_{m,n,p} -> alpha m + beta n on the Heisenberg group.
struct Morphism {
  std::vector<double> coefficients;
};

/// Throws InvalidArgument if the morphism does not fit the group.
void check_morphism(const Morphism& g, const GroupSpec& spec);
double morphism_eval(const Morphism& g, const GroupSpec& spec, const GroupElement& x);

/// Symmetric subset S (e in S, S = S^-1) described explicitly or by a rule.
class SymmetricSet {
 public:
  struct WholeGroup {};
  struct Explicit {
    std::vector<GroupElement> elements;  // canonical order, closed under inverse
    ElementSet members;
  };
  struct Strip {
    Morphism morphism;
    double bound = 0.0;  // |g(x)| < bound
  };
  struct ExcludedPairs {
    std::shared_ptr<const SymmetricSet> base;
    std::vector<GroupElement> excluded;  // closed under inverse
    ElementSet members;
  };
  struct Cross {
    int m = 0;
    int n = 0;
  };
  struct LengthBall {
    int n = 0;
    ElementSet members;
  };
  using Rule = std::variant<WholeGroup, Explicit, Strip, ExcludedPairs, Cross, LengthBall>;

  static SymmetricSet whole_group();
  /// Explicit list; throws unless it contains e and is closed under inverse.
  static SymmetricSet explicit_set(const GroupSpec& spec, std::vector<GroupElement> elements);
  static SymmetricSet strip(const GroupSpec& spec, Morphism g, double bound);
  /// base minus the given elements and their inverses; e cannot be excluded.
  static SymmetricSet excluded_pairs(const GroupSpec& spec, SymmetricSet base,
                                     std::vector<GroupElement> excluded);
  /// {(k,0): |k| <= m} union {(0,l): |l| <= n} in Z^2.
  static SymmetricSet cross(const GroupSpec& spec, int m, int n);
  static SymmetricSet length_ball(const GroupSpec& spec, int n, const Caps& caps = {});

  const Rule& rule() const { return rule_; }
  std::string rule_name() const;

  /// Throws InvalidArgument if this rule cannot be evaluated on spec.
  void check_compatible(const GroupSpec& spec) const;

  /// True when membership is decided by a finite list.
  bool is_finite() const;

  /// Membership without validating x or the rule against spec; callers must
  /// have run check_compatible(spec) and spec.validate(x).
  bool contains_unchecked(const GroupSpec& spec, const GroupElement& x) const;

 private:
  explicit SymmetricSet(Rule rule) : rule_(std::move(rule)) {}
  Rule rule_;
};

bool set_contains(const SymmetricSet& s, const GroupSpec& spec, const GroupElement& x);

}  // namespace chordext::groups
