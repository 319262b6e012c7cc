#pragma once

#include <cstddef>
#include <string_view>

namespace chordext {

/// Resource caps shared by the BFS, clique and completion code.
struct Caps {
  int radius = 64;
  std::size_t cliques = 10000;
  std::size_t elements = 2'000'000;
  // Largest n·d for which a dense completion or a dense kernel is formed.
  std::size_t dense_dim = 4000;
};

/// Parses "radius=64,cliques=10000,elements=2000000,dense=4000"; unknown
/// keys and malformed values throw InvalidArgument.
Caps parse_caps(std::string_view text, Caps base = {});

/// Caps from the CHORDAL_EXTEND_CAPS environment variable (defaults if unset).
Caps caps_from_env();

}  // namespace chordext
