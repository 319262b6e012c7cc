#include "chordext/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include "chordext/errors.hpp"

namespace chordext::json_io {

using completion::Complex;
using completion::ComplexMatrix;
using groups::GroupElement;
using groups::GroupKind;
using groups::GroupSpec;
using groups::SymmetricSet;

namespace {

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string(what) + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidArgument(std::string(what) + ": expected an integer");
  auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw InvalidArgument(std::string(what) + ": integer out of range");
  }
  return static_cast<int>(v);
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidArgument(std::string(what) + ": expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidArgument("complex entry must be a number or [re, im]");
}

// nlohmann writes non-finite doubles as null; keep that explicit.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// groups

GroupSpec group_from_json(const json& j) {
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else if (j.is_object()) {
    const json& k = require(j, "kind", "group");
    if (!k.is_string()) throw InvalidArgument("group: \"kind\" must be a string");
    kind = k.get<std::string>();
  } else {
    throw InvalidArgument("group must be a string or an object");
  }

  GroupSpec spec = GroupSpec::int_lattice(1);
  if (kind == "int_lattice") {
    int d = j.is_object() && j.contains("d") ? as_int(j.at("d"), "group.d") : 1;
    spec = GroupSpec::int_lattice(d);
  } else if (kind == "heisenberg") {
    spec = GroupSpec::heisenberg();
  } else if (kind == "infinite_dihedral") {
    spec = GroupSpec::infinite_dihedral();
  } else if (kind == "free_group") {
    int rank = j.is_object() && j.contains("rank") ? as_int(j.at("rank"), "group.rank") : 2;
    spec = GroupSpec::free_group(rank);
  } else {
    throw InvalidArgument("unknown group kind \"" + kind + "\"");
  }
  if (j.is_object() && j.contains("generators")) {
    spec = spec.with_generators(elements_from_json(spec, j.at("generators")));
  }
  return spec;
}

json group_to_json(const GroupSpec& spec) {
  json j = json::object();
  j["kind"] = groups::kind_name(spec.kind());
  if (spec.kind() == GroupKind::kIntLattice) j["d"] = spec.rank();
  if (spec.kind() == GroupKind::kFreeGroup) j["rank"] = spec.rank();
  if (!spec.default_generators()) j["generators"] = elements_to_json(spec.generators());
  return j;
}

GroupElement element_from_json(const GroupSpec& spec, const json& j) {
  GroupElement x;
  if (j.is_string()) {
    std::string w = j.get<std::string>();
    if (w == "e") w.clear();
    x = GroupElement::from_word(std::move(w));
  } else if (j.is_array()) {
    std::vector<std::int64_t> coords;
    for (const auto& c : j) {
      if (!c.is_number_integer()) throw InvalidArgument("element coordinates must be integers");
      coords.push_back(c.get<std::int64_t>());
    }
    if (coords.size() > groups::kMaxCoords) throw InvalidArgument("too many coordinates");
    x = GroupElement::from_coords(coords);
  } else {
    throw InvalidArgument("element must be an integer array or a word");
  }
  spec.validate(x);
  return x;
}

json element_to_json(const GroupElement& x) {
  if (x.is_word()) return x.word().empty() ? json("e") : json(x.word());
  json a = json::array();
  for (auto c : x.coords()) a.push_back(c);
  return a;
}

GroupElement element_from_key(const GroupSpec& spec, const std::string& key) {
  const bool words =
      spec.kind() == GroupKind::kInfiniteDihedral || spec.kind() == GroupKind::kFreeGroup;
  if (words) return element_from_json(spec, json(key));
  std::string body;
  for (char c : key) {
    if (c != '(' && c != ')' && c != '[' && c != ']' && c != ' ') body.push_back(c);
  }
  json arr = json::array();
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      arr.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed element key \"" + key + "\"");
    }
  }
  return element_from_json(spec, arr);
}

std::string element_key(const GroupElement& x) {
  if (x.is_word()) return x.word().empty() ? "e" : x.word();
  std::string out;
  for (std::size_t i = 0; i < x.coord_count(); ++i) {
    if (i) out += ",";
    out += std::to_string(x.coord(i));
  }
  return out;
}

std::vector<GroupElement> elements_from_json(const GroupSpec& spec, const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of elements");
  std::vector<GroupElement> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(element_from_json(spec, e));
  return out;
}

json elements_to_json(std::span<const GroupElement> xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(element_to_json(x));
  return a;
}

SymmetricSet set_from_json(const GroupSpec& spec, const json& j, const Caps& caps) {
  const json& r = require(j, "rule", "set");
  if (!r.is_string()) throw InvalidArgument("set: \"rule\" must be a string");
  const std::string rule = r.get<std::string>();
  if (rule == "all") return SymmetricSet::whole_group();
  if (rule == "explicit") {
    return SymmetricSet::explicit_set(spec, elements_from_json(spec, require(j, "elements", "set")));
  }
  if (rule == "strip") {
    const json& m = require(j, "morphism", "set");
    if (!m.is_array()) throw InvalidArgument("set: \"morphism\" must be an array");
    groups::Morphism g;
    for (const auto& c : m) g.coefficients.push_back(as_double(c, "set.morphism"));
    return SymmetricSet::strip(spec, std::move(g), as_double(require(j, "bound", "set"), "set.bound"));
  }
  if (rule == "excluded_pairs") {
    SymmetricSet base = j.contains("base") ? set_from_json(spec, j.at("base"), caps)
                                           : SymmetricSet::whole_group();
    return SymmetricSet::excluded_pairs(spec, std::move(base),
                                        elements_from_json(spec, require(j, "excluded", "set")));
  }
  if (rule == "cross") {
    return SymmetricSet::cross(spec, as_int(require(j, "m", "set"), "set.m"),
                               as_int(require(j, "n", "set"), "set.n"));
  }
  if (rule == "length_ball") {
    return SymmetricSet::length_ball(spec, as_int(require(j, "n", "set"), "set.n"), caps);
  }
  throw InvalidArgument("unknown set rule \"" + rule + "\"");
}

json set_to_json(const SymmetricSet& s) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        json j = json::object();
        if constexpr (std::is_same_v<T, SymmetricSet::WholeGroup>) {
          j["rule"] = "all";
        } else if constexpr (std::is_same_v<T, SymmetricSet::Explicit>) {
          j["rule"] = "explicit";
          j["elements"] = elements_to_json(r.elements);
        } else if constexpr (std::is_same_v<T, SymmetricSet::Strip>) {
          j["rule"] = "strip";
          j["morphism"] = r.morphism.coefficients;
          j["bound"] = r.bound;
        } else if constexpr (std::is_same_v<T, SymmetricSet::ExcludedPairs>) {
          j["rule"] = "excluded_pairs";
          j["base"] = set_to_json(*r.base);
          j["excluded"] = elements_to_json(r.excluded);
        } else if constexpr (std::is_same_v<T, SymmetricSet::Cross>) {
          j["rule"] = "cross";
          j["m"] = r.m;
          j["n"] = r.n;
        } else {
          j["rule"] = "length_ball";
          j["n"] = r.n;
        }
        return j;
      },
      s.rule());
}

// ---------------------------------------------------------------------------
// matrices

ComplexMatrix matrix_from_json(const json& j) {
  if (j.is_number()) {
    ComplexMatrix m(1, 1);
    m(0, 0) = j.get<double>();
    return m;
  }
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return ComplexMatrix(0, 0);
  if (!j[0].is_array()) throw InvalidArgument("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = as_complex(row[c]);
  }
  return m;
}

json complex_to_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Complex> complex_list_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of complex numbers");
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(as_complex(e));
  return out;
}

// ---------------------------------------------------------------------------
// positive definite data

extend::PDFunctionData pd_data_from_json(const json& j, const Caps& caps) {
  GroupSpec spec = group_from_json(require(j, "group", "data"));
  SymmetricSet set = set_from_json(spec, require(j, "set", "data"), caps);
  int d = j.contains("d") ? as_int(j.at("d"), "data.d") : 1;
  bool zero_default = false;
  if (j.contains("default")) {
    const json& def = j.at("default");
    if (def == "zero") {
      zero_default = true;
    } else if (!(def == "none" || def.is_null())) {
      throw InvalidArgument("data: \"default\" must be \"zero\" or \"none\"");
    }
  }
  std::vector<std::pair<GroupElement, ComplexMatrix>> values;
  const json& v = require(j, "values", "data");
  if (v.is_object()) {
    for (const auto& [key, m] : v.items()) {
      values.emplace_back(element_from_key(spec, key), matrix_from_json(m));
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      values.emplace_back(element_from_json(spec, require(item, "at", "data.values")),
                          matrix_from_json(require(item, "value", "data.values")));
    }
  } else {
    throw InvalidArgument("data: \"values\" must be an object or an array");
  }
  return extend::PDFunctionData(std::move(spec), std::move(set), d, std::move(values),
                                zero_default);
}

json pd_data_to_json(const extend::PDFunctionData& data) {
  json values = json::object();
  for (const auto& [x, m] : data.stored()) values[element_key(x)] = matrix_to_json(m);
  json j = json::object();
  j["group"] = group_to_json(data.spec());
  j["set"] = set_to_json(data.set());
  j["d"] = data.block_dim();
  j["values"] = std::move(values);
  j["default"] = data.zero_default() ? "zero" : "none";
  return j;
}

// ---------------------------------------------------------------------------
// graphs and partial matrices

graphs::Graph graph_from_json(const json& j) {
  int n = as_int(require(j, "n", "graph"), "graph.n");
  if (n < 0) throw InvalidArgument("graph.n must be nonnegative");
  std::vector<std::pair<int, int>> edges;
  const json& e = require(j, "edges", "graph");
  if (!e.is_array()) throw InvalidArgument("graph.edges must be an array");
  for (const auto& pair : e) {
    if (!pair.is_array() || pair.size() != 2) throw InvalidArgument("edge must be [i, j]");
    edges.emplace_back(as_int(pair[0], "edge"), as_int(pair[1], "edge"));
  }
  return graphs::Graph::from_edges(n, edges);
}

json graph_to_json(const graphs::Graph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"n", g.size()}, {"edges", std::move(edges)}};
}

completion::PartialBlockMatrix partial_from_json(const json& j) {
  int n = as_int(require(j, "n", "partial matrix"), "n");
  int d = as_int(require(j, "d", "partial matrix"), "d");
  completion::PartialBlockMatrix p(n, d);
  const json& blocks = require(j, "blocks", "partial matrix");
  if (!blocks.is_object()) throw InvalidArgument("partial matrix: \"blocks\" must be an object");
  for (const auto& [key, m] : blocks.items()) {
    auto comma = key.find(',');
    int a = 0, b = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument(key);
      a = std::stoi(key.substr(0, comma));
      b = std::stoi(key.substr(comma + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("malformed block key \"" + key + "\"");
    }
    p.set_block(a, b, matrix_from_json(m));
  }
  if (j.contains("pattern")) {
    for (const auto& pair : j.at("pattern")) {
      if (!pair.is_array() || pair.size() != 2) throw InvalidArgument("pattern entry must be [i, j]");
      int a = as_int(pair[0], "pattern"), b = as_int(pair[1], "pattern");
      if (!p.specified(a, b)) {
        throw InvalidArgument("pattern edge " + std::to_string(a) + "," + std::to_string(b) +
                              " has no block");
      }
    }
  }
  p.validate();
  return p;
}

json partial_to_json(const completion::PartialBlockMatrix& p) {
  json pattern = json::array();
  json blocks = json::object();
  for (int i = 0; i < p.size(); ++i) {
    if (p.specified(i, i)) blocks[std::to_string(i) + "," + std::to_string(i)] = matrix_to_json(p.block(i, i));
  }
  for (const auto& [a, b] : p.pattern().edges()) {
    pattern.push_back({a, b});
    blocks[std::to_string(a) + "," + std::to_string(b)] = matrix_to_json(p.block(a, b));
  }
  return {{"n", p.size()}, {"d", p.block_dim()}, {"pattern", std::move(pattern)},
          {"blocks", std::move(blocks)}};
}

// ---------------------------------------------------------------------------
// results

json certificate_to_json(const graphs::ChordalityCertificate& c, const cayley::Window* window) {
  json j = json::object();
  auto labels = [&](const std::vector<int>& idx) {
    json a = json::array();
    for (int v : idx) a.push_back(element_to_json((*window)[v]));
    return a;
  };
  if (const auto* peo = std::get_if<graphs::PerfectEliminationOrdering>(&c)) {
    j["chordal"] = true;
    j["peo"] = peo->order;
    if (window) j["peo_elements"] = labels(peo->order);
  } else {
    const auto& cyc = std::get<graphs::ChordlessCycle>(c);
    j["chordal"] = false;
    j["cycle"] = cyc.cycle;
    if (window) j["cycle_elements"] = labels(cyc.cycle);
  }
  return j;
}

json ball_to_json(const completion::MatrixBall& b) {
  return {{"center", matrix_to_json(b.center)},
          {"left_radius", matrix_to_json(b.left_radius)},
          {"right_radius", matrix_to_json(b.right_radius)},
          {"unique", b.unique}};
}

json pd_check_to_json(const extend::PdCheck& c) {
  json j = {{"ok", c.ok}, {"window_size", c.window_size}, {"clique_count", c.clique_count}};
  if (!c.ok) {
    j["clique_index"] = c.clique_index;
    j["clique"] = elements_to_json(c.clique);
    j["min_eigenvalue"] = number(c.min_eigenvalue);
  }
  return j;
}

json report_to_json(const extend::ExtensionReport& r) {
  json j = json::object();
  j["radii"] = r.radii;
  j["folner_parameters"] = r.folner_parameters;
  j["test_set"] = elements_to_json(r.test_set);
  j["seed"] = r.seed;
  json ball_eigs = json::array();
  for (const auto& v : r.ball_kernel_min_eigenvalues) ball_eigs.push_back(optional_number(v));
  j["ball_kernel_min_eigenvalues"] = std::move(ball_eigs);
  json tuples = json::array();
  for (const auto& per_radius : r.tuples_by_radius) {
    json a = json::array();
    for (const auto& t : per_radius) a.push_back(elements_to_json(t));
    tuples.push_back(std::move(a));
  }
  j["tuples"] = std::move(tuples);
  json cells = json::array();
  for (const auto& c : r.cells) {
    json cell = json::object();
    cell["radius"] = c.radius;
    cell["N"] = c.folner_parameter;
    cell["folner_size"] = c.folner_size;
    cell["window_size"] = c.window_size;
    cell["dense_components"] = c.dense_components;
    cell["kernel_min_eigenvalue"] = optional_number(c.kernel_min_eigenvalue);
    json grams = json::array();
    for (double v : c.gram_min_eigenvalues) grams.push_back(number(v));
    cell["gram_min_eigenvalues"] = std::move(grams);
    cell["min_gram_eigenvalue"] = number(c.min_gram_eigenvalue);
    cell["max_deviation_on_set"] = number(c.max_deviation_on_set);
    cell["max_asymmetry"] = number(c.max_asymmetry);
    json averaged = json::array();
    for (const auto& [x, m] : c.averaged) {
      averaged.push_back({{"at", element_to_json(x)}, {"value", matrix_to_json(m)}});
    }
    cell["averaged"] = std::move(averaged);
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  return j;
}

namespace {
json chain_to_json(const extend::ForcedChain& c) {
  return {{"tuple", elements_to_json(c.tuple)}, {"ball", ball_to_json(c.ball)}};
}
}  // namespace

json z2_certificate_to_json(const extend::Z2Certificate& c) {
  json j = json::object();
  j["which"] = "z2";
  j["partially_positive"] = c.partially_positive;
  j["window_size"] = c.window_size;
  j["clique_count"] = c.clique_count;
  j["via_second_axis"] = chain_to_json(c.via_second_axis);
  j["via_first_axis"] = chain_to_json(c.via_first_axis);
  j["forced_diagonal"] = matrix_to_json(c.forced_diagonal);
  j["diagonal_error"] = number(c.diagonal_error);
  j["contradiction_chain"] = chain_to_json(c.contradiction_chain);
  j["forced_value"] = matrix_to_json(c.forced_value);
  j["specified_value"] = matrix_to_json(c.specified_value);
  j["contradiction"] = number(c.contradiction);
  j["secondary_chain"] = chain_to_json(c.secondary_chain);
  j["secondary_contradiction"] = number(c.secondary_contradiction);
  j["confirms_non_extendable"] = c.confirms_non_extendable;
  return j;
}

json cross_certificate_to_json(const extend::CrossCertificate& c) {
  json j = json::object();
  j["which"] = "cross";
  j["u1"] = matrix_to_json(c.u1);
  j["u2"] = matrix_to_json(c.u2);
  j["m"] = c.m;
  j["n"] = c.n;
  j["first_toeplitz_min_eigenvalue"] = number(c.first_toeplitz_min_eigenvalue);
  j["second_toeplitz_min_eigenvalue"] = number(c.second_toeplitz_min_eigenvalue);
  j["toeplitz_psd"] = c.toeplitz_psd;
  j["first_axis_chain"] = chain_to_json(c.first_axis_chain);
  j["second_axis_chain"] = chain_to_json(c.second_axis_chain);
  j["forced_first"] = c.forced_first ? matrix_to_json(*c.forced_first) : json(nullptr);
  j["forced_second"] = c.forced_second ? matrix_to_json(*c.forced_second) : json(nullptr);
  j["forced_order"] = {"u1*u2", "u2*u1"};
  j["forced_gap"] = number(c.forced_gap);
  j["extendable"] = c.extendable;
  return j;
}

json atoms_to_json(std::span<const extend::Atom> atoms) {
  json a = json::array();
  for (const auto& atom : atoms) {
    a.push_back({{"weight", number(atom.weight)}, {"frequency", number(atom.frequency)}});
  }
  return a;
}

json polygon_cycle_to_json(const cayley::PolygonCycle& c) {
  return {{"N", c.steps_per_side},
          {"directions", elements_to_json(c.directions)},
          {"vertices", elements_to_json(c.vertices)},
          {"length", c.vertices.size()},
          {"generates_lattice", c.generates_lattice}};
}

json folner_set_to_json(const cayley::FolnerSet& f) {
  return {{"N", f.parameter}, {"elements", elements_to_json(f.elements)}};
}

}  // namespace chordext::json_io
