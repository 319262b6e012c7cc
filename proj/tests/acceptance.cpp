// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when everything passes).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "chordext/cayley.hpp"
#include "chordext/completion.hpp"
#include "chordext/errors.hpp"
#include "chordext/extend.hpp"
#include "chordext/graphs.hpp"
#include "chordext/json_io.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace chordext;
using completion::Complex;
using completion::ComplexMatrix;
using groups::GroupElement;
using groups::GroupSpec;
using nlohmann::json;

namespace tol {
constexpr double kCertificate = 1e-9;      // forced values, gaps, contradictions
constexpr double kCompletionEig = 1e-7;    // min eigenvalue of a completion
constexpr double kSpecifiedCopy = 1e-12;   // specified blocks after completion
constexpr double kFilledBound = 1e-9;      // filled block norm over the diagonal bound
constexpr double kOnSet = 1e-12;           // Phi_F(s) - phi(s) on S
constexpr double kGramAtFour = 1e-2;       // Gram min eigenvalue at N = 4
constexpr double kMonotoneNoise = 1e-12;   // rounding slack when comparing across N
constexpr double kFolnerBox16 = 0.3;       // Z^2 box ratio at N = 16
constexpr double kUnitCircle = 1e-6;       // |1 - |z|| for the atoms
constexpr double kMomentRecon = 1e-6;      // relative to c_0
constexpr double kGridPsd = 1e-8;          // cross grid positivity
constexpr double kMarginal = 1e-6;         // cross grid marginals
}  // namespace tol

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fixture_path(const std::string& name) {
  return std::string(CHORDEXT_FIXTURE_DIR) + "/" + name;
}

json read_json(const std::string& name) {
  std::ifstream in(fixture_path(name));
  return json::parse(in);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// 1 -------------------------------------------------------------------------
Outcome z2_counterexample() {
  auto c = extend::certify_z2_counterexample();
  Outcome o;
  const double diag = (c.forced_diagonal - ComplexMatrix::Identity(2, 2)).norm();
  const Complex forced = c.forced_value(1, 0);
  const Complex specified = c.specified_value(1, 0);
  o.pass = c.partially_positive && diag <= tol::kCertificate &&
           std::abs(forced - 1.0) <= tol::kCertificate && specified == Complex(0.0) &&
           std::abs(c.contradiction - 1.0) <= tol::kCertificate && c.confirms_non_extendable;
  o.detail = "||Phi(1,1)-I||=" + fmt(diag) + ", forced (2,1) entry " + fmt(forced.real()) +
             " vs specified " + fmt(specified.real()) + ", contradiction " + fmt(c.contradiction);
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome cross_counterexample() {
  ComplexMatrix u1 = mat2(0, 1, 1, 0), u2 = mat2(1, 0, 0, -1);
  auto c = extend::certify_cross_counterexample(u1, u2);
  Outcome o;
  if (!c.forced_first || !c.forced_second) return {false, "a chain did not force a value"};
  const double e1 = (*c.forced_first - u1 * u2).norm();
  const double e2 = (*c.forced_second - u2 * u1).norm();
  ComplexMatrix v1 = mat2(Complex(0, 1), 0, 0, Complex(std::cos(1.0), std::sin(1.0)));
  ComplexMatrix v2 = mat2(-1, 0, 0, Complex(0, -1));
  auto commuting = extend::certify_cross_counterexample(v1, v2);
  o.pass = c.toeplitz_psd && e1 <= tol::kCertificate && e2 <= tol::kCertificate &&
           std::abs(c.forced_gap - 2.0) <= tol::kCertificate && !c.extendable &&
           commuting.forced_gap <= tol::kCertificate && commuting.extendable;
  o.detail = "Pauli: (1,0)-first chain = U1U2 (err " + fmt(e1) + "), (0,1)-first chain = U2U1 (err " +
             fmt(e2) + "), gap " + fmt(c.forced_gap) + "; commuting gap " + fmt(commuting.forced_gap);
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome chordality_certificates() {
  std::mt19937_64 rng(2024);
  int disagreements = 0, bad_certs = 0, chordal_seen = 0;
  std::uniform_int_distribution<int> big(1, 30), small(1, 7);
  std::uniform_real_distribution<double> dens(0.05, 0.9);
  for (int t = 0; t < 500; ++t) {
    int n = big(rng);
    auto g = t % 2 ? oracle::random_graph(n, dens(rng), rng)
                   : oracle::random_chordal_graph(n, dens(rng) / 3, rng);
    auto c = graphs::is_chordal(g);
    chordal_seen += graphs::certifies_chordal(c);
    disagreements += graphs::certifies_chordal(c) != oracle::simplicial_elimination_chordal(g);
    bad_certs += !graphs::verify_certificate(g, c);
  }
  for (int t = 0; t < 2000; ++t) {
    auto g = oracle::random_graph(small(rng), dens(rng), rng);
    auto c = graphs::is_chordal(g);
    disagreements += graphs::certifies_chordal(c) != oracle::brute_force_chordal(g);
    bad_certs += !graphs::verify_certificate(g, c);
  }
  auto spec = GroupSpec::int_lattice(2);
  auto s = groups::SymmetricSet::excluded_pairs(spec, groups::SymmetricSet::whole_group(),
                                                {oracle::z2(1, 1)});
  auto w = cayley::ball(spec, 2);
  auto g = cayley::cayley_graph(spec, s, w);
  std::vector<int> square;
  for (auto x : {oracle::z2(0, 0), oracle::z2(0, 1), oracle::z2(1, 1), oracle::z2(-1, 0)}) {
    square.push_back(*w.index_of(x));
  }
  const bool square_ok = graphs::verify_certificate(g, graphs::ChordlessCycle{square});
  // the search on the four vertices alone finds exactly this cycle
  auto sub = cayley::Window::from_elements(
      spec, {oracle::z2(0, 0), oracle::z2(0, 1), oracle::z2(1, 1), oracle::z2(-1, 0)});
  auto sub_g = cayley::cayley_graph(spec, s, sub);
  auto found = graphs::is_chordal(sub_g);
  const bool found_ok = !graphs::certifies_chordal(found) && graphs::verify_certificate(sub_g, found) &&
                        std::get<graphs::ChordlessCycle>(found).cycle.size() == 4;
  const bool window_ok = !graphs::certifies_chordal(graphs::is_chordal(g));
  Outcome o;
  o.pass = disagreements == 0 && bad_certs == 0 && square_ok && found_ok && window_ok;
  o.detail = "2500 graphs (" + std::to_string(chordal_seen) + " chordal among the large ones): " +
             std::to_string(disagreements) + " disagreements, " + std::to_string(bad_certs) +
             " bad certificates; 4-cycle (0,0),(0,1),(1,1),(-1,0) " +
             (square_ok && found_ok ? "found and verified" : "NOT verified");
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome completion_round_trip() {
  std::mt19937_64 rng(77);
  double worst_eig = 0.0, worst_copy = 0.0, worst_excess = -1.0;
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    int n = 2 + t % 7, d = 1 + (t / 7) % 2;
    int rank = t % 3 == 0 ? std::max(1, n * d / 2) : n * d;
    ComplexMatrix full = oracle::random_psd(n * d, rank, rng);
    auto g = oracle::random_chordal_graph(n, 0.3, rng);
    completion::PartialBlockMatrix p(n, d);
    for (int i = 0; i < n; ++i) p.set_block(i, i, full.block(i * d, i * d, d, d));
    for (const auto& [i, j] : g.edges()) p.set_block(i, j, full.block(i * d, j * d, d, d));
    ComplexMatrix w;
    try {
      w = completion::chordal_complete(p);
    } catch (const std::exception&) {
      ++failures;
      continue;
    }
    const double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
    worst_eig = std::min(worst_eig, oracle::min_eig(w) / scale);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ComplexMatrix blk = w.block(i * d, j * d, d, d);
        if (i == j || g.has_edge(i, j)) {
          worst_copy = std::max(worst_copy, (blk - full.block(i * d, j * d, d, d)).cwiseAbs().maxCoeff());
        } else {
          double bound = std::sqrt(oracle::spectral_norm(full.block(i * d, i * d, d, d)) *
                                   oracle::spectral_norm(full.block(j * d, j * d, d, d)));
          worst_excess = std::max(worst_excess, oracle::spectral_norm(blk) - bound);
        }
      }
    }
  }
  Outcome o;
  o.pass = failures == 0 && worst_eig >= -tol::kCompletionEig && worst_copy <= tol::kSpecifiedCopy &&
           worst_excess <= tol::kFilledBound;
  o.detail = "200 instances: " + std::to_string(failures) + " failures, min eigenvalue " +
             fmt(worst_eig) + " (relative), specified drift " + fmt(worst_copy) +
             ", max filled norm over bound " + fmt(worst_excess);
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome extension_exactness() {
  struct Case {
    const char* name;
    int radius;
  };
  const Case cases[] = {{"z_strip.json", 2}, {"dihedral_ball.json", 2}, {"heisenberg_strip.json", 1}};
  const std::vector<int> ns{2, 4, 8};
  Outcome o;
  for (const auto& c : cases) {
    auto data = json_io::pd_data_from_json(read_json(c.name));
    std::vector<int> radii{c.radius};
    extend::ReportOptions opt;
    opt.seed = 5;
    auto t0 = std::chrono::steady_clock::now();
    auto r = extend::extension_report(data, radii, ns, data.spec().generators(), opt);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double dev = 0.0;
    bool monotone = true;
    double at4 = 0.0;
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      dev = std::max(dev, r.cells[i].max_deviation_on_set);
      if (r.cells[i].folner_parameter == 4) at4 = r.cells[i].min_gram_eigenvalue;
      if (i > 0 && r.cells[i].min_gram_eigenvalue < r.cells[i - 1].min_gram_eigenvalue - tol::kMonotoneNoise) {
        monotone = false;
      }
    }
    const bool ok = dev <= tol::kOnSet && at4 >= -tol::kGramAtFour && monotone;
    o.pass = o.pass && ok;
    std::string grams;
    for (const auto& cell : r.cells) grams += (grams.empty() ? "" : ",") + fmt(cell.min_gram_eigenvalue);
    o.detail += std::string(o.detail.empty() ? "" : "; ") + c.name + ": dev " + fmt(dev) +
                ", Gram min [" + grams + "]" + (monotone ? "" : " NOT monotone") + ", " + fmt(secs) + "s";
  }
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome tree_powers() {
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<int> size(1, 40);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    auto tree = oracle::random_tree(size(rng), rng);
    if (!graphs::is_tree(tree)) ++bad;
    for (int k = 1; k <= 4; ++k) {
      auto p = graphs::graph_power(tree, k);
      auto c = graphs::is_chordal(p);
      if (!graphs::certifies_chordal(c) || !graphs::verify_certificate(p, c)) ++bad;
    }
  }
  auto g = json_io::graph_from_json(read_json("square_not_chordal.json"));
  auto c = graphs::is_chordal(g);
  auto sq = graphs::graph_power(g, 2);
  auto csq = graphs::is_chordal(sq);
  const bool fixture_ok = graphs::certifies_chordal(c) && graphs::verify_certificate(g, c) &&
                          !graphs::certifies_chordal(csq) && graphs::verify_certificate(sq, csq);
  Outcome o;
  o.pass = bad == 0 && fixture_ok;
  std::string cycle;
  if (!graphs::certifies_chordal(csq)) {
    for (int v : std::get<graphs::ChordlessCycle>(csq).cycle) cycle += (cycle.empty() ? "" : ",") + std::to_string(v);
  }
  o.detail = "400 tree powers: " + std::to_string(bad) + " non-chordal; stored chordal graph has square with chordless cycle [" +
             cycle + "]";
  return o;
}

// 7 -------------------------------------------------------------------------
bool independent_chordless_check(const std::vector<GroupElement>& s, const cayley::PolygonCycle& c) {
  std::set<std::pair<std::int64_t, std::int64_t>> members;
  for (const auto& x : s) members.insert({x.coord(0), x.coord(1)});
  const auto& v = c.vertices;
  const std::size_t n = v.size();
  if (n < 4) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::pair<std::int64_t, std::int64_t> diff{v[j].coord(0) - v[i].coord(0), v[j].coord(1) - v[i].coord(1)};
      if (diff.first == 0 && diff.second == 0) return false;
      const bool adjacent = members.count(diff) != 0;
      const bool consecutive = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent != consecutive) return false;
    }
  }
  return true;
}

Outcome polygon_cycles() {
  std::vector<std::vector<GroupElement>> sets;
  auto cross = [](int m) {
    std::vector<GroupElement> s;
    for (int k = -m; k <= m; ++k) s.push_back(oracle::z2(k, 0));
    for (int l = -m; l <= m; ++l)
      if (l) s.push_back(oracle::z2(0, l));
    return s;
  };
  sets.push_back(cross(1));
  sets.push_back(cross(2));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-3, 3);
  while (sets.size() < 20) {
    std::vector<GroupElement> s{oracle::z2(0, 0)};
    const int pairs = 2 + static_cast<int>(sets.size()) % 4;  // |S| <= 11
    while (static_cast<int>(s.size()) < 1 + 2 * pairs) {
      int a = coord(rng), b = coord(rng);
      if ((a == 0 && b == 0) || std::find(s.begin(), s.end(), oracle::z2(a, b)) != s.end()) continue;
      s.push_back(oracle::z2(a, b));
      s.push_back(oracle::z2(-a, -b));
    }
    bool spans = false;
    for (const auto& x : s)
      for (const auto& y : s)
        if (x.coord(0) * y.coord(1) - x.coord(1) * y.coord(0) != 0) spans = true;
    if (spans) sets.push_back(s);
  }
  int bad = 0;
  int longest = 0;
  for (const auto& s : sets) {
    try {
      auto c = cayley::polygon_cycle(s);
      if (!cayley::polygon_cycle_is_chordless(s, c) || !independent_chordless_check(s, c)) ++bad;
      longest = std::max(longest, static_cast<int>(c.vertices.size()));
    } catch (const std::exception&) {
      ++bad;
    }
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = "20 sets incl. Cross(1,1), Cross(2,2): " + std::to_string(bad) +
             " failures; longest cycle " + std::to_string(longest);
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome folner_diagnostics() {
  auto z2 = GroupSpec::int_lattice(2);
  std::vector<double> box;
  for (int n : {2, 4, 8, 16}) {
    box.push_back(cayley::folner_ratio(z2, z2.generators(), cayley::folner_set(z2, n).elements));
  }
  bool box_ok = box.back() < tol::kFolnerBox16;
  for (std::size_t i = 1; i < box.size(); ++i) box_ok = box_ok && box[i] < box[i - 1];

  auto h = GroupSpec::heisenberg();
  std::vector<double> heis;
  for (int n : {2, 4, 8}) {
    heis.push_back(cayley::folner_ratio(h, h.generators(), cayley::folner_set(h, n).elements));
  }
  bool heis_ok = true;
  for (std::size_t i = 1; i < heis.size(); ++i) heis_ok = heis_ok && heis[i] < heis[i - 1];

  auto f = GroupSpec::free_group(2);
  double free_min = 1e300;
  for (int r = 2; r <= 6; ++r) {
    free_min = std::min(free_min, cayley::folner_ratio(f, f.generators(), cayley::ball(f, r).elements()));
  }
  Outcome o;
  o.pass = box_ok && heis_ok && free_min >= 1.0;
  o.detail = "Z^2 boxes " + fmt(box[0]) + "," + fmt(box[1]) + "," + fmt(box[2]) + "," + fmt(box[3]) +
             "; Heisenberg " + fmt(heis[0]) + "," + fmt(heis[1]) + "," + fmt(heis[2]) +
             "; free balls r=2..6 min " + fmt(free_min);
  return o;
}

// 9 -------------------------------------------------------------------------
Outcome caratheodory_fejer() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> wdist(0.05, 2.0), fdist(0.0, 2 * M_PI), delta(0.0, 0.5);
  int failures = 0;
  double worst_recon = 0.0, worst_circle = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 8;
    std::vector<Complex> c;
    if (t % 2 == 0) {
      std::vector<extend::Atom> atoms;
      const int k = 1 + t % (m + 2);
      for (int i = 0; i < k; ++i) atoms.push_back({wdist(rng), fdist(rng)});
      c = extend::atom_moments(atoms, m);
    } else {
      ComplexMatrix r = oracle::random_matrix(m + 1, 1, rng);
      c.assign(m + 1, 0.0);
      for (int k = 0; k <= m; ++k)
        for (int i = 0; i + k <= m; ++i) c[k] += r(i + k, 0) * std::conj(r(i, 0));
      c[0] += delta(rng);
    }
    try {
      auto atoms = extend::caratheodory_fejer(c);
      auto back = extend::atom_moments(atoms, m);
      for (const auto& a : atoms) {
        if (!(a.weight > 0.0)) ++failures;
        std::complex<double> z = std::polar(1.0, a.frequency);
        worst_circle = std::max(worst_circle, std::abs(1.0 - std::abs(z)));
      }
      for (int k = 0; k <= m; ++k) worst_recon = std::max(worst_recon, std::abs(back[k] - c[k]) / c[0].real());
    } catch (const std::exception& e) {
      ++failures;
      if (std::getenv("CHORDEXT_DEBUG")) {
        std::cerr << "cf case " << t << " m=" << m << ": " << e.what() << "\n";
        for (auto& x : c) std::cerr << "  " << x << "\n";
      }
    }
  }
  double worst_grid = 0.0, worst_marginal = 0.0;
  for (int t = 0; t < 40; ++t) {
    std::vector<extend::Atom> ha, va;
    for (int i = 0; i < 1 + t % 3; ++i) ha.push_back({wdist(rng), fdist(rng)});
    for (int i = 0; i < 1 + t % 2; ++i) va.push_back({wdist(rng), fdist(rng)});
    double hsum = 0, vsum = 0;
    for (auto& a : ha) hsum += a.weight;
    for (auto& a : va) vsum += a.weight;
    for (auto& a : va) a.weight *= hsum / vsum;  // shared c_0
    auto h = extend::atom_moments(ha, 3);
    auto v = extend::atom_moments(va, 3);
    try {
      auto grid = extend::cross_scalar_extend(h, v, 3, 3);
      ComplexMatrix t16(16, 16);
      for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) t16(a, b) = grid.at(a / 4 - b / 4, a % 4 - b % 4);
      worst_grid = std::min(worst_grid, oracle::min_eig(t16));
      for (int k = 0; k <= 3; ++k) {
        worst_marginal = std::max(worst_marginal, std::abs(grid.at(k, 0) - h[k]));
        worst_marginal = std::max(worst_marginal, std::abs(grid.at(0, k) - v[k]));
      }
    } catch (const std::exception&) {
      ++failures;
    }
  }
  Outcome o;
  o.pass = failures == 0 && worst_recon <= tol::kMomentRecon && worst_circle <= tol::kUnitCircle &&
           worst_grid >= -tol::kGridPsd && worst_marginal <= tol::kMarginal;
  o.detail = "200 sequences: " + std::to_string(failures) + " failures, reconstruction " + fmt(worst_recon) +
             " c0; grids min eigenvalue " + fmt(worst_grid) + ", marginal error " + fmt(worst_marginal);
  return o;
}

// 10 ------------------------------------------------------------------------
Outcome cli_contract() {
  struct Case {
    std::vector<std::string> args;
    int expected;
    const char* caps = nullptr;
  };
  const std::string z2g = R"({"kind":"int_lattice","d":2})";
  const std::vector<Case> cases = {
      {{"chordal-check", "--group", R"({"kind":"int_lattice","d":1})", "--set",
        R"({"rule":"strip","morphism":[1],"bound":2})", "--radius", "5"}, 0},
      {{"chordal-check", "--group", fixture_path("z2_group.json"), "--set",
        fixture_path("z2_minus_diagonal_set.json"), "--radius", "2"}, 1},
      {{"chordal-check", "--group", "{not json", "--set", "{}"}, 2},
      {{"chordal-check", "--group", z2g, "--set", R"({"rule":"cross","m":1,"n":1})", "--radius", "4"}, 3,
       "radius=3"},
      {{"extend", "--data", fixture_path("z_strip.json"), "--radius", "1,2", "--seed", "1"}, 0},
      {{"extend", "--data", fixture_path("dihedral_ball.json"), "--radius", "2", "--seed", "1"}, 0},
      {{"extend", "--data", fixture_path("heisenberg_strip.json"), "--radius", "1",
        "--folner-sizes", "2,4", "--seed", "1"}, 0},
      {{"extend", "--data", fixture_path("z2_counterexample.json"), "--radius", "2"}, 1},
      {{"extend", "--data", fixture_path("not_psd_strip.json"), "--radius", "2"}, 1},
      {{"extend", "--data", fixture_path("z_strip.json"), "--radius", "2", "--folner-sizes", "64"}, 3,
       "dense=16"},
      {{"certify", "--which", "z2"}, 0},
      {{"certify", "--which", "cross"}, 0},
      {{"certify", "--which", "cross", "--unitaries", "[[[1,0],[0,-1]],[[0,[0,1]],[[0,1],0]]]"}, 0},
      {{"certify", "--which", "cross", "--unitaries", "[[[1,0],[0,1]]]"}, 2},
      {{"lulu-cycle", "--set", R"({"rule":"cross","m":1,"n":1})"}, 0},
      {{"lulu-cycle", "--set", R"({"rule":"cross","m":2,"n":2})", "--N", "auto"}, 0},
      {{"lulu-cycle", "--set", "[[0,0],[1,0],[-1,0]]"}, 2},
      {{"folner", "--group", z2g, "--folner-sizes", "2,4,8,16"}, 0},
      {{"folner", "--group", R"({"kind":"free_group","rank":2})", "--folner-sizes", "2,3,4"}, 0},
      {{"cf-decompose", "--moments", "[1, [0.5, 0.8660254037844386]]"}, 0},
      {{"cf-decompose", "--moments", "[1, 1.5]"}, 1},
      {{"no-such-command"}, 2},
  };
  int wrong_code = 0, nondeterministic = 0;
  std::string first_wrong;
  for (const auto& c : cases) {
    if (c.caps) ::setenv("CHORDAL_EXTEND_CAPS", c.caps, 1);
    std::ostringstream out1, err1, out2, err2;
    int code1 = cli::run_cli(c.args, out1, err1);
    int code2 = cli::run_cli(c.args, out2, err2);
    if (c.caps) ::unsetenv("CHORDAL_EXTEND_CAPS");
    if (code1 != c.expected || code2 != c.expected) {
      ++wrong_code;
      if (first_wrong.empty()) first_wrong = c.args[0] + " -> " + std::to_string(code1);
    }
    if (out1.str() != out2.str()) ++nondeterministic;
  }
  Outcome o;
  o.pass = wrong_code == 0 && nondeterministic == 0;
  o.detail = std::to_string(cases.size()) + " runs: " + std::to_string(wrong_code) + " wrong exit codes" +
             (first_wrong.empty() ? "" : " (first: " + first_wrong + ")") + ", " +
             std::to_string(nondeterministic) + " non-identical outputs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Z^2 counterexample reproduction", z2_counterexample},
      {"cross counterexample", cross_counterexample},
      {"chordality certificates", chordality_certificates},
      {"chordal completion round-trip", completion_round_trip},
      {"extension exactness on S", extension_exactness},
      {"tree powers and the non-inheritance graph", tree_powers},
      {"polygon cycle constructor", polygon_cycles},
      {"Følner diagnostics", folner_diagnostics},
      {"Carathéodory-Fejér", caratheodory_fejer},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed;
}
