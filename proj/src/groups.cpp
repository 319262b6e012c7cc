#include "chordext/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <optional>
#include <sstream>

#include "chordext/errors.hpp"

namespace chordext::groups {

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::from_coords(std::span<const std::int64_t> coords) {
  if (coords.size() > kMaxCoords) {
    throw InvalidArgument("element has " + std::to_string(coords.size()) +
                          " coordinates; at most " + std::to_string(kMaxCoords) +
                          " are supported");
  }
  GroupElement x;
  std::copy(coords.begin(), coords.end(), x.coords_.begin());
  x.size_ = static_cast<std::uint8_t>(coords.size());
  return x;
}

GroupElement GroupElement::from_coords(std::initializer_list<std::int64_t> coords) {
  return from_coords(std::span<const std::int64_t>(coords.begin(), coords.size()));
}

GroupElement GroupElement::from_word(std::string word) {
  GroupElement x;
  x.is_word_ = true;
  x.word_ = std::move(word);
  return x;
}

std::size_t GroupElement::hash() const {
  if (is_word_) return std::hash<std::string>{}(word_) ^ 0x9e3779b97f4a7c15ULL;
  std::size_t h = size_;
  for (std::size_t i = 0; i < size_; ++i) {
    h ^= std::hash<std::int64_t>{}(coords_[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string GroupElement::debug_string() const {
  if (is_word_) return word_.empty() ? std::string("e") : word_;
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (a.is_word_ != b.is_word_) return false;
  if (a.is_word_) return a.word_ == b.word_;
  return a.size_ == b.size_ &&
         std::equal(a.coords_.begin(), a.coords_.begin() + a.size_, b.coords_.begin());
}

bool operator<(const GroupElement& a, const GroupElement& b) {
  if (a.is_word_ != b.is_word_) return !a.is_word_;
  if (a.is_word_) {
    // shortlex
    if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
    return a.word_ < b.word_;
  }
  if (a.size_ != b.size_) return a.size_ < b.size_;
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.begin() + a.size_,
                                      b.coords_.begin(), b.coords_.begin() + b.size_);
}

// ---------------------------------------------------------------------------
// GroupSpec

namespace {

constexpr std::string_view kFreeLetters = "xyzw";

char invert_letter(char c) {
  return std::islower(static_cast<unsigned char>(c))
             ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
             : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool is_word_kind(GroupKind kind) {
  return kind == GroupKind::kInfiniteDihedral || kind == GroupKind::kFreeGroup;
}

}  // namespace

GroupSpec::GroupSpec(GroupKind kind, int rank) : kind_(kind), rank_(rank) {
  switch (kind) {
    case GroupKind::kIntLattice:
      for (int i = 0; i < rank; ++i) {
        std::vector<std::int64_t> v(rank, 0);
        v[i] = 1;
        generators_.push_back(GroupElement::from_coords(v));
        v[i] = -1;
        generators_.push_back(GroupElement::from_coords(v));
      }
      break;
    case GroupKind::kHeisenberg:
      generators_ = {GroupElement::from_coords({1, 0, 0}), GroupElement::from_coords({-1, 0, 0}),
                     GroupElement::from_coords({0, 1, 0}), GroupElement::from_coords({0, -1, 0})};
      break;
    case GroupKind::kInfiniteDihedral:
      generators_ = {GroupElement::from_word("a"), GroupElement::from_word("b")};
      break;
    case GroupKind::kFreeGroup:
      for (int i = 0; i < rank; ++i) {
        char c = kFreeLetters[i];
        generators_.push_back(GroupElement::from_word(std::string(1, c)));
        generators_.push_back(GroupElement::from_word(std::string(1, invert_letter(c))));
      }
      break;
  }
}

GroupSpec GroupSpec::int_lattice(int d) {
  if (d < 1 || d > static_cast<int>(kMaxCoords)) {
    throw InvalidArgument("int_lattice dimension must be in [1, " +
                          std::to_string(kMaxCoords) + "]");
  }
  return GroupSpec(GroupKind::kIntLattice, d);
}

GroupSpec GroupSpec::heisenberg() { return GroupSpec(GroupKind::kHeisenberg, 0); }

GroupSpec GroupSpec::infinite_dihedral() { return GroupSpec(GroupKind::kInfiniteDihedral, 0); }

GroupSpec GroupSpec::free_group(int rank) {
  if (rank < 1 || rank > kMaxFreeRank) {
    throw InvalidArgument("free group rank must be in [1, " + std::to_string(kMaxFreeRank) + "]");
  }
  return GroupSpec(GroupKind::kFreeGroup, rank);
}

GroupSpec GroupSpec::with_generators(std::vector<GroupElement> generators) const {
  if (generators.empty()) throw InvalidArgument("generating set is empty");
  ElementSet members;
  for (const auto& a : generators) {
    validate(a);
    if (is_identity(*this, a)) throw InvalidArgument("identity in generating set");
    members.insert(a);
  }
  for (const auto& a : generators) {
    if (!members.count(inverse(*this, a))) {
      throw InvalidArgument("generating set not closed under inverse: " + a.debug_string());
    }
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  GroupSpec out = *this;
  out.generators_ = std::move(generators);
  out.default_generators_ = false;
  return out;
}

std::string GroupSpec::alphabet() const {
  if (kind_ == GroupKind::kInfiniteDihedral) return "ab";
  if (kind_ == GroupKind::kFreeGroup) {
    std::string out;
    for (int i = 0; i < rank_; ++i) {
      out += kFreeLetters[i];
      out += invert_letter(kFreeLetters[i]);
    }
    return out;
  }
  return {};
}

void GroupSpec::validate(const GroupElement& x) const {
  if (is_word_kind(kind_)) {
    if (!x.is_word()) throw InvalidArgument("expected a word for " + kind_name(kind_));
    const std::string letters = alphabet();
    for (char c : x.word()) {
      if (letters.find(c) == std::string::npos) {
        throw InvalidArgument(std::string("letter '") + c + "' not in alphabet \"" + letters + "\"");
      }
    }
    if (reduce_word(*this, x.word()) != x.word()) {
      throw InvalidArgument("word '" + x.word() + "' is not reduced");
    }
    return;
  }
  if (x.is_word()) throw InvalidArgument("expected integer coordinates for " + kind_name(kind_));
  std::size_t want = kind_ == GroupKind::kHeisenberg ? 3 : static_cast<std::size_t>(rank_);
  if (x.coord_count() != want) {
    throw InvalidArgument("expected " + std::to_string(want) + " coordinates, got " +
                          std::to_string(x.coord_count()));
  }
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  return a.kind_ == b.kind_ && a.rank_ == b.rank_ && a.generators_ == b.generators_;
}

std::string kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::kIntLattice:
      return "int_lattice";
    case GroupKind::kHeisenberg:
      return "heisenberg";
    case GroupKind::kInfiniteDihedral:
      return "infinite_dihedral";
    case GroupKind::kFreeGroup:
      return "free_group";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Arithmetic

std::string reduce_word(const GroupSpec& spec, std::string_view word) {
  const bool dihedral = spec.kind() == GroupKind::kInfiniteDihedral;
  const std::string letters = spec.alphabet();
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    if (letters.find(c) == std::string::npos) {
      throw InvalidArgument(std::string("letter '") + c + "' not in alphabet \"" + letters + "\"");
    }
    char cancel = dihedral ? c : invert_letter(c);
    if (!out.empty() && out.back() == cancel) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

GroupElement identity(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupKind::kIntLattice:
      return GroupElement::from_coords(std::vector<std::int64_t>(spec.rank(), 0));
    case GroupKind::kHeisenberg:
      return GroupElement::from_coords({0, 0, 0});
    default:
      return GroupElement::from_word("");
  }
}

bool is_identity(const GroupSpec& spec, const GroupElement& x) {
  (void)spec;
  if (x.is_word()) return x.word().empty();
  for (auto c : x.coords()) {
    if (c != 0) return false;
  }
  return true;
}

namespace unchecked {

GroupElement multiply(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
  switch (spec.kind()) {
    case GroupKind::kIntLattice: {
      std::array<std::int64_t, kMaxCoords> v{};
      for (std::size_t i = 0; i < x.coord_count(); ++i) v[i] = x.coord(i) + y.coord(i);
      return GroupElement::from_coords(std::span<const std::int64_t>(v.data(), x.coord_count()));
    }
    case GroupKind::kHeisenberg:
      // X_{m,n,p} X_{m',n',p'} = X_{m+m', n+n', p+p'+m n'}
      return GroupElement::from_coords({x.coord(0) + y.coord(0), x.coord(1) + y.coord(1),
                                        x.coord(2) + y.coord(2) + x.coord(0) * y.coord(1)});
    default:
      return GroupElement::from_word(reduce_word(spec, x.word() + y.word()));
  }
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& x) {
  switch (spec.kind()) {
    case GroupKind::kIntLattice: {
      std::array<std::int64_t, kMaxCoords> v{};
      for (std::size_t i = 0; i < x.coord_count(); ++i) v[i] = -x.coord(i);
      return GroupElement::from_coords(std::span<const std::int64_t>(v.data(), x.coord_count()));
    }
    case GroupKind::kHeisenberg:
      return GroupElement::from_coords(
          {-x.coord(0), -x.coord(1), x.coord(0) * x.coord(1) - x.coord(2)});
    case GroupKind::kInfiniteDihedral:
      return GroupElement::from_word(std::string(x.word().rbegin(), x.word().rend()));
    case GroupKind::kFreeGroup: {
      std::string w(x.word().rbegin(), x.word().rend());
      for (char& c : w) c = invert_letter(c);
      return GroupElement::from_word(std::move(w));
    }
  }
  return x;
}

}  // namespace unchecked

GroupElement multiply(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
  spec.validate(x);
  spec.validate(y);
  return unchecked::multiply(spec, x, y);
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& x) {
  spec.validate(x);
  return unchecked::inverse(spec, x);
}

std::vector<std::vector<GroupElement>> bfs_layers(const GroupSpec& spec, int radius,
                                                  const Caps& caps) {
  if (radius < 0) throw InvalidArgument("radius must be nonnegative");
  if (radius > caps.radius) {
    throw CapExceeded("radius " + std::to_string(radius) + " exceeds cap " +
                      std::to_string(caps.radius));
  }
  GroupElement e = identity(spec);
  ElementSet seen{e};
  std::vector<std::vector<GroupElement>> layers{{e}};
  for (int r = 1; r <= radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& u : layers.back()) {
      for (const auto& a : spec.generators()) {
        GroupElement v = unchecked::multiply(spec, u, a);
        if (seen.insert(v).second) next.push_back(std::move(v));
      }
    }
    if (seen.size() > caps.elements) {
      throw CapExceeded("ball of radius " + std::to_string(r) + " exceeds " +
                        std::to_string(caps.elements) + " elements");
    }
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(next));
  }
  return layers;
}

int bfs_word_length(const GroupSpec& spec, const GroupElement& x, const Caps& caps) {
  spec.validate(x);
  GroupElement e = identity(spec);
  if (x == e) return 0;
  ElementSet seen{e};
  std::vector<GroupElement> frontier{e};
  for (int r = 1; r <= caps.radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& u : frontier) {
      for (const auto& a : spec.generators()) {
        GroupElement v = unchecked::multiply(spec, u, a);
        if (!seen.insert(v).second) continue;
        if (v == x) return r;
        next.push_back(std::move(v));
      }
    }
    if (seen.size() > caps.elements) {
      throw CapExceeded("word-length BFS exceeded " + std::to_string(caps.elements) +
                        " elements at radius " + std::to_string(r));
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  throw CapExceeded("word length of " + x.debug_string() + " exceeds radius cap " +
                    std::to_string(caps.radius));
}

int word_length(const GroupSpec& spec, const GroupElement& x, const Caps& caps) {
  spec.validate(x);
  if (!spec.default_generators() || spec.kind() == GroupKind::kHeisenberg) {
    return bfs_word_length(spec, x, caps);
  }
  int length = 0;
  if (x.is_word()) {
    length = static_cast<int>(x.word().size());
  } else {
    for (auto c : x.coords()) length += static_cast<int>(c < 0 ? -c : c);
  }
  if (length > caps.radius) {
    throw CapExceeded("word length " + std::to_string(length) + " exceeds radius cap " +
                      std::to_string(caps.radius));
  }
  return length;
}

// ---------------------------------------------------------------------------
// Morphisms

void check_morphism(const Morphism& g, const GroupSpec& spec) {
  std::size_t want = 0;
  if (spec.kind() == GroupKind::kIntLattice) {
    want = static_cast<std::size_t>(spec.rank());
  } else if (spec.kind() == GroupKind::kHeisenberg) {
    want = 2;
  } else {
    throw InvalidArgument("no morphism to R is supported on " + kind_name(spec.kind()));
  }
  if (g.coefficients.size() != want) {
    throw InvalidArgument("morphism needs " + std::to_string(want) + " coefficients, got " +
                          std::to_string(g.coefficients.size()));
  }
  for (double c : g.coefficients) {
    if (!std::isfinite(c)) throw InvalidArgument("morphism coefficient is not finite");
  }
}

double morphism_eval(const Morphism& g, const GroupSpec& spec, const GroupElement& x) {
  check_morphism(g, spec);
  spec.validate(x);
  double out = 0.0;
  for (std::size_t i = 0; i < g.coefficients.size(); ++i) {
    out += g.coefficients[i] * static_cast<double>(x.coord(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetric sets

namespace {

ElementSet close_under_inverse(const GroupSpec& spec, std::vector<GroupElement>& elements) {
  ElementSet members;
  for (const auto& x : elements) {
    spec.validate(x);
    members.insert(x);
  }
  for (const auto& x : std::vector<GroupElement>(elements)) {
    GroupElement inv = inverse(spec, x);
    if (members.insert(inv).second) elements.push_back(inv);
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return members;
}

}  // namespace

SymmetricSet SymmetricSet::whole_group() { return SymmetricSet(WholeGroup{}); }

SymmetricSet SymmetricSet::explicit_set(const GroupSpec& spec, std::vector<GroupElement> elements) {
  ElementSet members;
  for (const auto& x : elements) {
    spec.validate(x);
    members.insert(x);
  }
  if (!members.count(identity(spec))) throw InvalidArgument("explicit set must contain e");
  for (const auto& x : members) {
    if (!members.count(inverse(spec, x))) {
      throw InvalidArgument("explicit set not closed under inverse: " + x.debug_string() +
                            " present without its inverse");
    }
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return SymmetricSet(Explicit{std::move(elements), std::move(members)});
}

SymmetricSet SymmetricSet::strip(const GroupSpec& spec, Morphism g, double bound) {
  check_morphism(g, spec);
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw InvalidArgument("strip bound must be a positive finite number");
  }
  return SymmetricSet(Strip{std::move(g), bound});
}

SymmetricSet SymmetricSet::excluded_pairs(const GroupSpec& spec, SymmetricSet base,
                                          std::vector<GroupElement> excluded) {
  base.check_compatible(spec);
  ElementSet members = close_under_inverse(spec, excluded);
  if (members.count(identity(spec))) throw InvalidArgument("the identity cannot be excluded");
  return SymmetricSet(ExcludedPairs{std::make_shared<const SymmetricSet>(std::move(base)),
                                    std::move(excluded), std::move(members)});
}

SymmetricSet SymmetricSet::cross(const GroupSpec& spec, int m, int n) {
  if (spec.kind() != GroupKind::kIntLattice || spec.rank() != 2) {
    throw InvalidArgument("cross sets live in int_lattice(2)");
  }
  if (m < 0 || n < 0) throw InvalidArgument("cross arm lengths must be nonnegative");
  return SymmetricSet(Cross{m, n});
}

SymmetricSet SymmetricSet::length_ball(const GroupSpec& spec, int n, const Caps& caps) {
  if (n < 0) throw InvalidArgument("length-ball radius must be nonnegative");
  ElementSet members;
  for (const auto& layer : bfs_layers(spec, n, caps)) {
    members.insert(layer.begin(), layer.end());
  }
  return SymmetricSet(LengthBall{n, std::move(members)});
}

std::string SymmetricSet::rule_name() const {
  struct Visitor {
    std::string operator()(const WholeGroup&) const { return "all"; }
    std::string operator()(const Explicit&) const { return "explicit"; }
    std::string operator()(const Strip&) const { return "strip"; }
    std::string operator()(const ExcludedPairs&) const { return "excluded_pairs"; }
    std::string operator()(const Cross&) const { return "cross"; }
    std::string operator()(const LengthBall&) const { return "length_ball"; }
  };
  return std::visit(Visitor{}, rule_);
}

bool SymmetricSet::is_finite() const {
  return std::holds_alternative<Explicit>(rule_) || std::holds_alternative<Cross>(rule_) ||
         std::holds_alternative<LengthBall>(rule_);
}

void SymmetricSet::check_compatible(const GroupSpec& spec) const {
  auto check_elements = [&](const std::vector<GroupElement>& xs) {
    for (const auto& x : xs) spec.validate(x);
  };
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Explicit>) {
          check_elements(r.elements);
        } else if constexpr (std::is_same_v<T, Strip>) {
          check_morphism(r.morphism, spec);
        } else if constexpr (std::is_same_v<T, ExcludedPairs>) {
          r.base->check_compatible(spec);
          check_elements(r.excluded);
        } else if constexpr (std::is_same_v<T, Cross>) {
          if (spec.kind() != GroupKind::kIntLattice || spec.rank() != 2) {
            throw InvalidArgument("cross sets live in int_lattice(2)");
          }
        } else if constexpr (std::is_same_v<T, LengthBall>) {
          if (!r.members.empty()) spec.validate(*r.members.begin());
        }
      },
      rule_);
}

bool SymmetricSet::contains_unchecked(const GroupSpec& spec, const GroupElement& x) const {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SymmetricSet::WholeGroup>) {
          return true;
        } else if constexpr (std::is_same_v<T, SymmetricSet::Explicit>) {
          return r.members.count(x) > 0;
        } else if constexpr (std::is_same_v<T, SymmetricSet::Strip>) {
          double v = 0.0;
          for (std::size_t i = 0; i < r.morphism.coefficients.size(); ++i) {
            v += r.morphism.coefficients[i] * static_cast<double>(x.coord(i));
          }
          return std::abs(v) < r.bound;
        } else if constexpr (std::is_same_v<T, SymmetricSet::ExcludedPairs>) {
          return !r.members.count(x) && r.base->contains_unchecked(spec, x);
        } else if constexpr (std::is_same_v<T, SymmetricSet::Cross>) {
          std::int64_t k = x.coord(0), l = x.coord(1);
          return (l == 0 && std::abs(k) <= r.m) || (k == 0 && std::abs(l) <= r.n);
        } else {
          return r.members.count(x) > 0;
        }
      },
      rule_);
}

bool set_contains(const SymmetricSet& s, const GroupSpec& spec, const GroupElement& x) {
  spec.validate(x);
  s.check_compatible(spec);
  return s.contains_unchecked(spec, x);
}

}  // namespace chordext::groups
