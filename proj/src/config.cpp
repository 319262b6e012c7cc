#include "chordext/config.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "chordext/errors.hpp"

namespace chordext {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || out <= 0) {
    throw InvalidArgument("bad cap value for '" + std::string(key) + "': '" +
                          std::string(value) + "'");
  }
  return out;
}

}  // namespace

Caps parse_caps(std::string_view text, Caps base) {
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("cap entry without '=': '" + std::string(item) + "'");
    }
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    if (key == "radius") {
      base.radius = parse_number<int>(key, value);
    } else if (key == "cliques") {
      base.cliques = parse_number<std::size_t>(key, value);
    } else if (key == "elements") {
      base.elements = parse_number<std::size_t>(key, value);
    } else if (key == "dense") {
      base.dense_dim = parse_number<std::size_t>(key, value);
    } else {
      throw InvalidArgument("unknown cap '" + std::string(key) + "'");
    }
  }
  return base;
}

Caps caps_from_env() {
  const char* env = std::getenv("CHORDAL_EXTEND_CAPS");
  if (env == nullptr) return {};
  return parse_caps(env);
}

}  // namespace chordext
