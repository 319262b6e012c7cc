#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chordext/cayley.hpp"
#include "chordext/config.hpp"
#include "chordext/errors.hpp"
#include "chordext/extend.hpp"
#include "chordext/graphs.hpp"
#include "chordext/groups.hpp"
#include "chordext/json_io.hpp"

namespace chordext::cli {

namespace {

using json = nlohmann::json;
using groups::GroupElement;
using groups::GroupSpec;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kFailure = 3;

// Inline JSON when the text starts like JSON, else a file path, else a bare
// string (so `--group heisenberg` works).
json load_json(const std::string& text, const char* flag) {
  std::string body;
  const auto first = text.find_first_not_of(" \t\r\n");
  const char c = first == std::string::npos ? '\0' : text[first];
  if (c == '{' || c == '[' || c == '"' || c == '-' || (c >= '0' && c <= '9')) {
    body = text;
  } else if (std::filesystem::is_regular_file(text)) {
    std::ifstream in(text);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  } else {
    return json(text);
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string(flag) + ": malformed JSON: " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string(flag) + ": expected comma-separated integers, got \"" +
                            text + "\"");
    }
  }
  if (out.empty()) throw InvalidArgument(std::string(flag) + ": empty list");
  return out;
}

struct Options {
  std::string group;
  std::string set;
  std::string data;
  std::string radius = "1";
  std::string folner_sizes;
  std::string targets;
  std::string which = "z2";
  std::string unitaries;
  std::string steps = "auto";
  std::string moments;
  std::string out;
  double tol = completion::kDefaultTol;
  std::uint64_t seed = 0;
};

struct Result {
  int code = kOk;
  json body;
  std::string summary;
};

Result chordal_check(const Options& o, const Caps& caps) {
  if (o.group.empty() || o.set.empty()) throw InvalidArgument("chordal-check needs --group and --set");
  GroupSpec spec = json_io::group_from_json(load_json(o.group, "--group"));
  auto set = json_io::set_from_json(spec, load_json(o.set, "--set"), caps);
  int radius = parse_int_list(o.radius, "--radius").front();
  cayley::Window w = cayley::ball(spec, radius, caps);
  graphs::Graph g = cayley::cayley_graph(spec, set, w);
  auto cert = graphs::is_chordal(g);
  if (!graphs::verify_certificate(g, cert)) throw NumericalError("chordality certificate failed verification");

  Result r;
  r.body = {{"group", json_io::group_to_json(spec)},
            {"set", json_io::set_to_json(set)},
            {"radius", radius},
            {"window", json_io::elements_to_json(w.elements())},
            {"edges", g.edge_count()},
            {"certificate", json_io::certificate_to_json(cert, &w)},
            {"verified", true}};
  const bool chordal = graphs::certifies_chordal(cert);
  r.code = chordal ? kOk : kNegative;
  r.summary = std::string("Cayley graph on ball(") + std::to_string(radius) + ") with " +
              std::to_string(w.size()) + " vertices is " + (chordal ? "chordal" : "not chordal");
  return r;
}

Result extend_cmd(const Options& o, const Caps& caps) {
  if (o.data.empty()) throw InvalidArgument("extend needs --data");
  auto data = json_io::pd_data_from_json(load_json(o.data, "--data"), caps);
  const auto& spec = data.spec();
  std::vector<int> radii = parse_int_list(o.radius, "--radius");
  std::vector<int> sizes = parse_int_list(o.folner_sizes.empty() ? "2,4,8" : o.folner_sizes,
                                          "--folner-sizes");
  std::vector<GroupElement> targets = o.targets.empty()
                                          ? spec.generators()
                                          : json_io::elements_from_json(spec, load_json(o.targets, "--targets"));

  extend::ReportOptions ro;
  ro.tol = o.tol;
  ro.seed = o.seed;
  ro.caps = caps;
  Result r;
  try {
    auto report = extend::extension_report(data, radii, sizes, targets, ro);
    r.body = {{"status", "extended"}, {"data", json_io::pd_data_to_json(data)},
              {"report", json_io::report_to_json(report)}};
    double worst_dev = 0.0;
    double worst_gram = std::numeric_limits<double>::infinity();
    for (const auto& c : report.cells) {
      worst_dev = std::max(worst_dev, c.max_deviation_on_set);
      worst_gram = std::min(worst_gram, c.min_gram_eigenvalue);
    }
    std::ostringstream s;
    s << report.cells.size() << " report cells; max deviation on S " << worst_dev
      << "; smallest Gram eigenvalue " << worst_gram;
    r.summary = s.str();
  } catch (const NotChordal& e) {
    r.code = kNegative;
    r.body = {{"status", "not_chordal"}, {"message", e.what()}, {"cycle", e.cycle()},
              {"cycle_labels", e.labels()}};
    r.summary = std::string("not extendable by chordal completion: ") + e.what();
  } catch (const CliqueNotPsd& e) {
    r.code = kNegative;
    r.body = {{"status", "clique_not_psd"},
              {"message", e.what()},
              {"clique_index", e.clique_index()},
              {"clique", e.clique()},
              {"clique_labels", e.labels()},
              {"min_eigenvalue", e.min_eigenvalue()}};
    r.summary = std::string("data is not partially positive: ") + e.what();
  }
  return r;
}

Result certify(const Options& o) {
  Result r;
  if (o.which == "z2") {
    auto c = extend::certify_z2_counterexample(o.tol);
    r.body = json_io::z2_certificate_to_json(c);
    if (!c.confirms_non_extendable) {
      r.code = kFailure;
      r.summary = "the Z^2 certificate did not confirm non-extendability";
    } else {
      std::ostringstream s;
      s << "Z^2 data is not extendable; contradiction magnitude " << c.contradiction;
      r.summary = s.str();
    }
    return r;
  }
  if (o.which != "cross") throw InvalidArgument("--which must be z2 or cross");
  completion::ComplexMatrix u1(2, 2), u2(2, 2);
  u1 << 0, 1, 1, 0;
  u2 << 1, 0, 0, -1;
  if (!o.unitaries.empty()) {
    json u = load_json(o.unitaries, "--unitaries");
    if (!u.is_array() || u.size() != 2) throw InvalidArgument("--unitaries must be [U1, U2]");
    u1 = json_io::matrix_from_json(u[0]);
    u2 = json_io::matrix_from_json(u[1]);
  }
  auto c = extend::certify_cross_counterexample(u1, u2, 2, 2, o.tol);
  r.body = json_io::cross_certificate_to_json(c);
  std::ostringstream s;
  s << "cross data " << (c.extendable ? "passes" : "fails") << " the commutation test; gap "
    << c.forced_gap;
  r.summary = s.str();
  return r;
}

std::vector<GroupElement> finite_z2_set(const json& j) {
  GroupSpec z2 = GroupSpec::int_lattice(2);
  if (j.is_array()) return json_io::elements_from_json(z2, j);
  auto set = json_io::set_from_json(z2, j);
  if (const auto* e = std::get_if<groups::SymmetricSet::Explicit>(&set.rule())) return e->elements;
  if (const auto* c = std::get_if<groups::SymmetricSet::Cross>(&set.rule())) {
    std::vector<GroupElement> out;
    for (int k = -c->m; k <= c->m; ++k) out.push_back(GroupElement::from_coords({k, 0}));
    for (int l = -c->n; l <= c->n; ++l) {
      if (l != 0) out.push_back(GroupElement::from_coords({0, l}));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  throw InvalidArgument("lulu-cycle needs a finite set: an element array or an explicit or cross rule");
}

Result lulu_cycle(const Options& o) {
  if (o.set.empty()) throw InvalidArgument("lulu-cycle needs --set");
  auto s = finite_z2_set(load_json(o.set, "--set"));
  std::optional<int> steps;
  if (o.steps != "auto") steps = parse_int_list(o.steps, "--N").front();
  auto cycle = cayley::polygon_cycle(s, steps);
  Result r;
  r.body = json_io::polygon_cycle_to_json(cycle);
  r.body["chordless_verified"] = cayley::polygon_cycle_is_chordless(s, cycle);
  if (!r.body["chordless_verified"].get<bool>()) {
    throw NumericalError("constructed polygon cycle failed the chordless verifier");
  }
  r.summary = "chordless cycle of length " + std::to_string(cycle.vertices.size()) + " with N = " +
              std::to_string(cycle.steps_per_side);
  return r;
}

Result folner(const Options& o, const Caps& caps) {
  if (o.group.empty()) throw InvalidArgument("folner needs --group");
  GroupSpec spec = json_io::group_from_json(load_json(o.group, "--group"));
  std::vector<int> sizes = parse_int_list(
      o.folner_sizes.empty() ? (spec.is_amenable() ? "2,4,8,16" : "2,3,4,5,6") : o.folner_sizes,
      "--folner-sizes");
  const auto& gens = spec.generators();
  json rows = json::array();
  std::ostringstream s;
  s << "ratios |AK - K|/|K|:";
  for (int n : sizes) {
    std::vector<GroupElement> k;
    if (spec.is_amenable()) {
      k = cayley::folner_set(spec, n, caps).elements;
    } else {
      k = cayley::ball(spec, n, caps).elements();
    }
    double ratio = cayley::folner_ratio(spec, gens, k);
    rows.push_back({{"N", n}, {"size", k.size()}, {"ratio", ratio}});
    s << " " << ratio;
  }
  Result r;
  r.body = {{"group", json_io::group_to_json(spec)},
            {"amenable", spec.is_amenable()},
            {"sets", spec.is_amenable() ? "folner" : "ball"},
            {"translates", json_io::elements_to_json(gens)},
            {"rows", std::move(rows)}};
  r.summary = s.str();
  return r;
}

Result cf_decompose(const Options& o) {
  if (o.moments.empty()) throw InvalidArgument("cf-decompose needs --moments");
  auto c = json_io::complex_list_from_json(load_json(o.moments, "--moments"));
  Result r;
  try {
    auto atoms = extend::caratheodory_fejer(c, o.tol);
    auto back = extend::atom_moments(atoms, static_cast<int>(c.size()) - 1);
    double err = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) err = std::max(err, std::abs(back[k] - c[k]));
    r.body = {{"status", "decomposed"},
              {"atoms", json_io::atoms_to_json(atoms)},
              {"reconstruction_error", err}};
    r.summary = std::to_string(atoms.size()) + " atoms";
  } catch (const NotPsd& e) {
    r.code = kNegative;
    r.body = {{"status", "not_psd"}, {"message", e.what()}, {"min_eigenvalue", e.min_eigenvalue()}};
    r.summary = std::string("moment sequence is not positive: ") + e.what();
  }
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive definite extension on groups via chordal completion", "chordext"};
  app.require_subcommand(1);
  Options o;

  auto* chordal = app.add_subcommand("chordal-check", "Chordality of the Cayley graph of S on a ball");
  chordal->add_option("--group", o.group, "Group JSON or file")->required();
  chordal->add_option("--set", o.set, "Symmetric set JSON or file")->required();
  chordal->add_option("--radius", o.radius, "Ball radius")->capture_default_str();

  auto* ext = app.add_subcommand("extend", "Extend partially positive definite data and report");
  ext->add_option("--data", o.data, "Data JSON or file")->required();
  ext->add_option("--radius", o.radius, "Comma-separated ball radii")->capture_default_str();
  ext->add_option("--folner-sizes", o.folner_sizes, "Comma-separated Følner parameters (default 2,4,8)");
  ext->add_option("--targets", o.targets, "Elements to report (default: the generators)");
  ext->add_option("--tol", o.tol, "PSD tolerance")->capture_default_str();
  ext->add_option("--seed", o.seed, "Seed for the random Gram tuples")->capture_default_str();

  auto* cert = app.add_subcommand("certify", "Non-extendability certificates");
  cert->add_option("--which", o.which, "z2 or cross")->capture_default_str();
  cert->add_option("--unitaries", o.unitaries, "[U1, U2] for cross (default: Pauli X, Z)");
  cert->add_option("--tol", o.tol, "Tolerance")->capture_default_str();

  auto* lulu = app.add_subcommand("lulu-cycle", "Chordless polygon cycle for a finite set in Z^2");
  lulu->add_option("--set", o.set, "Element array, explicit or cross set")->required();
  lulu->add_option("--N", o.steps, "Steps per side, or auto")->capture_default_str();

  auto* fol = app.add_subcommand("folner", "Følner ratios |AK - K|/|K|");
  fol->add_option("--group", o.group, "Group JSON or file")->required();
  fol->add_option("--folner-sizes", o.folner_sizes,
                  "Comma-separated parameters (balls for free groups)");

  auto* cf = app.add_subcommand("cf-decompose", "Atoms on the circle from trigonometric moments");
  cf->add_option("--moments", o.moments, "Moments c_0..c_m as JSON")->required();
  cf->add_option("--tol", o.tol, "Tolerance")->capture_default_str();

  for (auto* sub : {chordal, ext, cert, lulu, fol, cf}) {
    sub->add_option("--out", o.out, "Write the JSON here instead of stdout");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Result r;
  try {
    Caps caps = caps_from_env();
    if (chordal->parsed()) {
      r = chordal_check(o, caps);
    } else if (ext->parsed()) {
      r = extend_cmd(o, caps);
    } else if (cert->parsed()) {
      r = certify(o);
    } else if (lulu->parsed()) {
      r = lulu_cycle(o);
    } else if (fol->parsed()) {
      r = folner(o, caps);
    } else {
      r = cf_decompose(o);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const MissingValue& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const WindowTooSmall& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kFailure;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }

  const std::string text = r.body.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write " << o.out << "\n";
      return kFailure;
    }
    f << text;
  }
  err << r.summary << "\n";
  return r.code;
}

}  // namespace chordext::cli
