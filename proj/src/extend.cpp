#include "chordext/extend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "chordext/errors.hpp"

namespace chordext::extend {

namespace unchecked = groups::unchecked;
using cayley::Window;

namespace {

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<std::string> labels_of(const Window& w, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(w[i].debug_string());
  return out;
}

std::vector<GroupElement> elements_of(const Window& w, const std::vector<int>& idx) {
  std::vector<GroupElement> out;
  for (int i : idx) out.push_back(w[i]);
  return out;
}

// Gram block matrix {phi(x_i^-1 x_j)} over window indices.
ComplexMatrix gram_on(const PDFunctionData& data, const Window& w, const std::vector<int>& idx) {
  const int d = data.block_dim();
  const auto& spec = data.spec();
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix g(n * d, n * d);
  for (Eigen::Index a = 0; a < n; ++a) {
    GroupElement inv = unchecked::inverse(spec, w[idx[a]]);
    g.block(a * d, a * d, d, d) = data.value_unchecked(groups::identity(spec));
    for (Eigen::Index b = a + 1; b < n; ++b) {
      ComplexMatrix v = data.value_unchecked(unchecked::multiply(spec, inv, w[idx[b]]));
      g.block(a * d, b * d, d, d) = v;
      g.block(b * d, a * d, d, d) = v.adjoint();
    }
  }
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// PDFunctionData

PDFunctionData::PDFunctionData(GroupSpec spec, SymmetricSet set, int d,
                               std::vector<std::pair<GroupElement, ComplexMatrix>> values,
                               bool zero_default)
    : spec_(std::make_shared<const GroupSpec>(std::move(spec))),
      set_(std::make_shared<const SymmetricSet>(std::move(set))),
      d_(d),
      zero_default_(zero_default) {
  if (d < 1) throw InvalidArgument("block dimension must be positive");
  set_->check_compatible(*spec_);
  std::sort(values.begin(), values.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [x, m] : values) {
    spec_->validate(x);
    if (!set_->contains_unchecked(*spec_, x)) {
      throw InvalidArgument("value given for " + x.debug_string() + ", which is not in S");
    }
    if (m.rows() != d || m.cols() != d) {
      throw InvalidArgument("value at " + x.debug_string() + " is not " + std::to_string(d) +
                            "x" + std::to_string(d));
    }
    if (!m.allFinite()) throw InvalidArgument("value at " + x.debug_string() + " is not finite");
    GroupElement inv = unchecked::inverse(*spec_, x);
    if (index_.count(x)) throw InvalidArgument("value for " + x.debug_string() + " given twice");
    if (inv != x && index_.count(inv)) {
      throw InvalidArgument("values given for both " + x.debug_string() + " and its inverse");
    }
    if (inv == x && completion::hermitian_defect(m) > 1e-12 * std::max(1.0, max_abs(m))) {
      throw InvalidArgument("value at the involution " + x.debug_string() +
                            " must be Hermitian");
    }
    index_.emplace(x, stored_.size());
    stored_.emplace_back(x, m);
  }
  GroupElement e = groups::identity(*spec_);
  if (!index_.count(e)) throw InvalidArgument("phi(e) must be given");
  const ComplexMatrix& at_e = stored_[index_.at(e)].second;
  double lo = completion::min_eigenvalue(at_e);
  if (lo < -completion::kDefaultTol * std::max(1.0, max_abs(at_e))) {
    throw InvalidArgument("phi(e) is not positive semidefinite (min eigenvalue " +
                          std::to_string(lo) + ")");
  }
}

bool PDFunctionData::in_set(const GroupElement& x) const {
  spec_->validate(x);
  return set_->contains_unchecked(*spec_, x);
}

ComplexMatrix PDFunctionData::value(const GroupElement& x) const {
  if (!in_set(x)) throw InvalidArgument(x.debug_string() + " is not in S");
  return value_unchecked(x);
}

ComplexMatrix PDFunctionData::value_unchecked(const GroupElement& x) const {
  if (auto it = index_.find(x); it != index_.end()) return stored_[it->second].second;
  if (auto it = index_.find(unchecked::inverse(*spec_, x)); it != index_.end()) {
    return stored_[it->second].second.adjoint();
  }
  if (zero_default_) return ComplexMatrix::Zero(d_, d_);
  throw MissingValue("no value for " + x.debug_string());
}

// ---------------------------------------------------------------------------
// Kernel, verification, completion

PdCheck verify_pd_function(const PDFunctionData& data, int radius, double tol, const Caps& caps) {
  Window w = cayley::ball(data.spec(), radius, caps);
  graphs::Graph g = cayley::cayley_graph(data.spec(), data.set(), w);
  auto cliques = graphs::maximal_cliques(g, caps.cliques);
  PdCheck out;
  out.window_size = w.size();
  out.clique_count = cliques.size();
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    ComplexMatrix gram = gram_on(data, w, cliques[k]);
    double lo = 0.0;
    if (completion::psd_within(gram, tol, &lo)) continue;
    out.ok = false;
    out.clique_index = k;
    out.clique = elements_of(w, cliques[k]);
    out.min_eigenvalue =
        std::isnan(lo) ? completion::min_eigenvalue(completion::hermitian_part(gram)) : lo;
    return out;
  }
  return out;
}

completion::PartialBlockMatrix build_kernel(const PDFunctionData& data, const Window& w) {
  const auto& spec = data.spec();
  graphs::Graph g = cayley::cayley_graph(spec, data.set(), w);
  completion::PartialBlockMatrix p(w.size(), data.block_dim());
  ComplexMatrix at_e = data.value_unchecked(groups::identity(spec));
  for (int i = 0; i < w.size(); ++i) p.set_block(i, i, at_e);
  for (auto [i, j] : g.edges()) {
    p.set_block(i, j, data.value_unchecked(unchecked::multiply(spec, unchecked::inverse(spec, w[i]), w[j])));
  }
  return p;
}

std::size_t CompletedKernel::dense_component_count() const {
  return static_cast<std::size_t>(
      std::count_if(components_.begin(), components_.end(), [](const auto& c) { return !c.clique; }));
}

ComplexMatrix CompletedKernel::block(int i, int j) const {
  const int d = block_dim();
  if (component_of_.at(i) != component_of_.at(j)) return ComplexMatrix::Zero(d, d);
  const Component& c = components_[component_of_[i]];
  if (c.clique) {
    const auto& spec = data_->spec();
    return data_->value_unchecked(unchecked::multiply(spec, unchecked::inverse(spec, window_[i]), window_[j]));
  }
  return c.values.block(local_index_[i] * d, local_index_[j] * d, d, d);
}

ComplexMatrix CompletedKernel::component_matrix(const Component& c) const {
  if (!c.clique) return c.values;
  return gram_on(*data_, window_, c.members);
}

ComplexMatrix CompletedKernel::dense(std::size_t max_dim) const {
  const int d = block_dim();
  const std::size_t dim = static_cast<std::size_t>(window_.size()) * d;
  if (dim > max_dim) {
    throw CapExceeded("dense kernel of dimension " + std::to_string(dim) + " exceeds " +
                      std::to_string(max_dim));
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& c : components_) {
    ComplexMatrix m = component_matrix(c);
    for (std::size_t a = 0; a < c.members.size(); ++a) {
      for (std::size_t b = 0; b < c.members.size(); ++b) {
        out.block(c.members[a] * d, c.members[b] * d, d, d) = m.block(a * d, b * d, d, d);
      }
    }
  }
  return out;
}

std::optional<double> CompletedKernel::min_eigenvalue(std::size_t max_dim) const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) {
    if (c.members.size() * block_dim() > max_dim) return std::nullopt;
  }
  for (const auto& c : components_) {
    lo = std::min(lo, completion::min_eigenvalue(completion::hermitian_part(component_matrix(c))));
  }
  return lo;
}

CompletedKernel extend_on_elements(const PDFunctionData& data, Window w, double tol,
                                   const Caps& caps) {
  const auto& spec = data.spec();
  const int d = data.block_dim();
  graphs::Graph g = cayley::cayley_graph(spec, data.set(), w);
  auto cert = graphs::is_chordal(g);
  if (auto* cycle = std::get_if<graphs::ChordlessCycle>(&cert)) {
    throw NotChordal("the Cayley graph on the window is not chordal", cycle->cycle,
                     labels_of(w, cycle->cycle));
  }

  CompletedKernel k;
  k.data_ = std::make_shared<const PDFunctionData>(data);
  k.component_of_.assign(w.size(), -1);
  k.local_index_.assign(w.size(), -1);
  auto components = graphs::connected_components(g);
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    CompletedKernel::Component comp;
    comp.members = std::move(components[ci]);
    const std::size_t size = comp.members.size();
    for (std::size_t a = 0; a < size; ++a) {
      k.component_of_[comp.members[a]] = static_cast<int>(ci);
      k.local_index_[comp.members[a]] = static_cast<int>(a);
    }
    if (size * d > caps.dense_dim) {
      throw CapExceeded("component with " + std::to_string(size) + " vertices exceeds the dense cap " +
                        std::to_string(caps.dense_dim));
    }
    comp.clique = std::all_of(comp.members.begin(), comp.members.end(),
                              [&](int v) { return g.degree(v) + 1 == static_cast<int>(size); });
    if (comp.clique) {
      ComplexMatrix gram = gram_on(data, w, comp.members);
      double lo = 0.0;
      if (!completion::psd_within(gram, tol, &lo)) {
        if (std::isnan(lo)) lo = completion::min_eigenvalue(completion::hermitian_part(gram));
        throw CliqueNotPsd("clique " + std::to_string(ci) + " is not positive semidefinite", ci,
                           comp.members, lo, labels_of(w, comp.members));
      }
    } else {
      completion::PartialBlockMatrix p(static_cast<int>(size), d);
      ComplexMatrix at_e = data.value_unchecked(groups::identity(spec));
      for (std::size_t a = 0; a < size; ++a) {
        p.set_block(static_cast<int>(a), static_cast<int>(a), at_e);
        const int v = comp.members[a];
        GroupElement inv = unchecked::inverse(spec, w[v]);
        for (int u : g.neighbors(v)) {
          const int b = k.local_index_[u];
          if (b > static_cast<int>(a)) {
            p.set_block(static_cast<int>(a), b, data.value_unchecked(unchecked::multiply(spec, inv, w[u])));
          }
        }
      }
      try {
        comp.values = completion::chordal_complete(p, tol);
      } catch (const CliqueNotPsd& err) {
        std::vector<int> global;
        for (int local : err.clique()) global.push_back(comp.members[local]);
        throw CliqueNotPsd(err.what(), err.clique_index(), global, err.min_eigenvalue(),
                           labels_of(w, global));
      }
    }
    k.components_.push_back(std::move(comp));
  }
  k.window_ = std::move(w);
  return k;
}

CompletedKernel extend_on_window(const PDFunctionData& data, int radius, double tol,
                                 const Caps& caps) {
  return extend_on_elements(data, cayley::ball(data.spec(), radius, caps), tol, caps);
}

Window averaging_window(const GroupSpec& spec, const cayley::FolnerSet& f,
                        std::span<const GroupElement> targets, const Caps& caps) {
  groups::ElementSet seen;
  for (const auto& x : targets) spec.validate(x);
  for (const auto& y : f.elements) {
    for (const auto& x : targets) {
      seen.insert(unchecked::multiply(spec, y, x));
      if (seen.size() > caps.elements) {
        throw CapExceeded("averaging window exceeds " + std::to_string(caps.elements) + " elements");
      }
    }
  }
  std::vector<GroupElement> elements(seen.begin(), seen.end());
  std::sort(elements.begin(), elements.end());
  return Window::from_elements(spec, std::move(elements));
}

std::vector<ComplexMatrix> folner_average(const CompletedKernel& k, const GroupSpec& spec,
                                          const cayley::FolnerSet& f,
                                          std::span<const GroupElement> targets) {
  if (f.elements.empty()) throw InvalidArgument("empty Følner set");
  const int d = k.block_dim();
  const Window& w = k.window();
  std::vector<std::string> violations;
  std::vector<ComplexMatrix> out;
  out.reserve(targets.size());
  for (const auto& x : targets) {
    spec.validate(x);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& y : f.elements) {
      auto i = w.index_of(y);
      GroupElement yx = unchecked::multiply(spec, y, x);
      auto j = w.index_of(yx);
      if (!i || !j) {
        if (violations.size() < 20) {
          violations.push_back("y=" + y.debug_string() + " x=" + x.debug_string() + " yx=" +
                               yx.debug_string());
        }
        continue;
      }
      sum += k.block(*i, *j);
    }
    out.push_back(sum / static_cast<double>(f.elements.size()));
  }
  if (!violations.empty()) {
    throw WindowTooSmall("the window does not contain y and yx for every Følner element y",
                         std::move(violations));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report

namespace {

std::vector<std::vector<int>> pick_tuples(std::size_t n, const ReportOptions& opt, int radius) {
  std::vector<std::vector<int>> tuples;
  if (n <= 12) {
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    tuples.push_back(all);
  }
  const std::size_t size = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, opt.tuple_size)));
  std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(radius) + 1);
  for (int t = 0; t < opt.tuple_count; ++t) {
    std::vector<int> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    tuples.push_back(std::move(pool));
  }
  return tuples;
}

}  // namespace

ExtensionReport extension_report(const PDFunctionData& data, std::span<const int> radii,
                                 std::span<const int> folner_parameters,
                                 std::span<const GroupElement> test_set,
                                 const ReportOptions& options) {
  if (radii.empty() || folner_parameters.empty()) {
    throw InvalidArgument("extension report needs at least one radius and one Følner size");
  }
  const auto& spec = data.spec();
  const int d = data.block_dim();
  constexpr std::size_t kEigenDiagnosticDim = 600;

  ExtensionReport report;
  report.radii.assign(radii.begin(), radii.end());
  report.folner_parameters.assign(folner_parameters.begin(), folner_parameters.end());
  report.test_set.assign(test_set.begin(), test_set.end());
  report.seed = options.seed;

  for (int radius : radii) {
    Window b = cayley::ball(spec, radius, options.caps);
    CompletedKernel on_ball = extend_on_window(data, radius, options.tol, options.caps);
    report.ball_kernel_min_eigenvalues.push_back(on_ball.min_eigenvalue(kEigenDiagnosticDim));

    auto tuples = pick_tuples(b.size(), options, radius);
    std::vector<std::vector<GroupElement>> tuple_elements;
    for (const auto& t : tuples) tuple_elements.push_back(elements_of(b, t));
    report.tuples_by_radius.push_back(tuple_elements);

    groups::ElementSet target_set{groups::identity(spec)};
    for (const auto& x : test_set) {
      spec.validate(x);
      target_set.insert(x);
    }
    for (const auto& x : b.elements()) {
      if (data.set().contains_unchecked(spec, x)) target_set.insert(x);
    }
    for (const auto& t : tuple_elements) {
      for (const auto& x : t) {
        GroupElement inv = unchecked::inverse(spec, x);
        for (const auto& y : t) target_set.insert(unchecked::multiply(spec, inv, y));
      }
    }
    std::vector<GroupElement> targets(target_set.begin(), target_set.end());
    std::sort(targets.begin(), targets.end());
    std::unordered_map<GroupElement, std::size_t, groups::ElementHash> target_index;
    for (std::size_t i = 0; i < targets.size(); ++i) target_index.emplace(targets[i], i);

    for (int n : folner_parameters) {
      cayley::FolnerSet f = cayley::folner_set(spec, n, options.caps);
      Window w = averaging_window(spec, f, targets, options.caps);
      CompletedKernel k = extend_on_elements(data, std::move(w), options.tol, options.caps);
      std::vector<ComplexMatrix> phi = folner_average(k, spec, f, targets);

      ExtensionCell cell;
      cell.radius = radius;
      cell.folner_parameter = n;
      cell.folner_size = f.elements.size();
      cell.window_size = static_cast<std::size_t>(k.window().size());
      cell.dense_components = k.dense_component_count();
      cell.kernel_min_eigenvalue = k.min_eigenvalue(kEigenDiagnosticDim);

      for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& x = targets[i];
        if (data.set().contains_unchecked(spec, x)) {
          cell.max_deviation_on_set = std::max(
              cell.max_deviation_on_set, completion::operator_norm(phi[i] - data.value_unchecked(x)));
        }
        auto inv = target_index.find(unchecked::inverse(spec, x));
        if (inv != target_index.end()) {
          cell.max_asymmetry = std::max(
              cell.max_asymmetry, completion::operator_norm(phi[inv->second] - phi[i].adjoint()));
        }
      }
      cell.min_gram_eigenvalue = std::numeric_limits<double>::infinity();
      for (const auto& t : tuple_elements) {
        const Eigen::Index m = static_cast<Eigen::Index>(t.size());
        ComplexMatrix gram(m * d, m * d);
        for (Eigen::Index a = 0; a < m; ++a) {
          GroupElement inv = unchecked::inverse(spec, t[a]);
          for (Eigen::Index c = 0; c < m; ++c) {
            gram.block(a * d, c * d, d, d) =
                phi[target_index.at(unchecked::multiply(spec, inv, t[c]))];
          }
        }
        double lo = completion::min_eigenvalue(completion::hermitian_part(gram));
        cell.gram_min_eigenvalues.push_back(lo);
        cell.min_gram_eigenvalue = std::min(cell.min_gram_eigenvalue, lo);
      }
      for (const auto& x : test_set) cell.averaged.emplace_back(x, phi[target_index.at(x)]);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

ComplexMatrix matrix2(Complex a, Complex b, Complex c, Complex dd) {
  ComplexMatrix m(2, 2);
  m << a, b, c, dd;
  return m;
}

GroupElement z2(std::int64_t a, std::int64_t b) { return GroupElement::from_coords({a, b}); }

// Ball for phi(g0^-1 g2) given the blocks of the 3x3 Gram matrix on g0,g1,g2.
ForcedChain chain(std::vector<GroupElement> tuple, const ComplexMatrix& at_e,
                  const ComplexMatrix& b, const ComplexMatrix& dd, double tol) {
  ForcedChain out;
  out.tuple = std::move(tuple);
  out.ball = completion::matrix_ball(at_e, b, at_e, dd, at_e, tol);
  return out;
}

}  // namespace

PDFunctionData z2_counterexample_data() {
  GroupSpec spec = GroupSpec::int_lattice(2);
  SymmetricSet set = SymmetricSet::excluded_pairs(spec, SymmetricSet::whole_group(), {z2(1, 1)});
  std::vector<std::pair<GroupElement, ComplexMatrix>> values{
      {z2(0, 0), ComplexMatrix::Identity(2, 2)},
      {z2(1, 0), matrix2(0, 0, 1, 0)},
      {z2(0, 1), matrix2(0, 1, 0, 0)},
  };
  return PDFunctionData(spec, set, 2, std::move(values), true);
}

Z2Certificate certify_z2_counterexample(double tol) {
  PDFunctionData data = z2_counterexample_data();
  Z2Certificate cert;
  PdCheck check = verify_pd_function(data, 3, tol);
  cert.partially_positive = check.ok;
  cert.window_size = static_cast<std::size_t>(check.window_size);
  cert.clique_count = check.clique_count;

  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  auto phi = [&](std::int64_t a, std::int64_t b) { return data.value(z2(a, b)); };

  cert.via_second_axis = chain({z2(0, 0), z2(0, 1), z2(1, 1)}, id, phi(0, 1), phi(1, 0), tol);
  cert.via_first_axis = chain({z2(0, 0), z2(1, 0), z2(1, 1)}, id, phi(1, 0), phi(0, 1), tol);
  auto meet = completion::intersect_balls(cert.via_second_axis.ball, cert.via_first_axis.ball, tol);
  if (meet.kind != completion::BallIntersection::Kind::kPoint) {
    throw NumericalError("the two constraints on Phi((1,1)) do not meet in a single point");
  }
  cert.forced_diagonal = *meet.point;
  cert.diagonal_error = completion::operator_norm(cert.forced_diagonal - id);

  cert.contradiction_chain =
      chain({z2(0, 0), z2(1, 1), z2(2, 1)}, id, cert.forced_diagonal, phi(1, 0), tol);
  if (!cert.contradiction_chain.ball.unique) {
    throw NumericalError("Phi((2,1)) is not forced by the chain (0,0),(1,1),(2,1)");
  }
  cert.forced_value = cert.contradiction_chain.ball.center;
  cert.specified_value = phi(2, 1);
  cert.contradiction = std::abs(cert.forced_value(1, 0) - cert.specified_value(1, 0));

  cert.secondary_chain =
      chain({z2(0, 0), z2(1, 1), z2(2, 2)}, id, cert.forced_diagonal, cert.forced_diagonal, tol);
  if (cert.secondary_chain.ball.unique) {
    cert.secondary_contradiction =
        completion::operator_norm(cert.secondary_chain.ball.center - phi(2, 2));
  }
  cert.confirms_non_extendable =
      cert.partially_positive && cert.diagonal_error <= tol && cert.contradiction > tol;
  return cert;
}

CrossCertificate certify_cross_counterexample(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                              int m, int n, double tol) {
  if (u1.rows() == 0 || u1.rows() != u1.cols() || u2.rows() != u2.cols() || u1.rows() != u2.rows()) {
    throw InvalidArgument("U1 and U2 must be square matrices of the same size");
  }
  const Eigen::Index d = u1.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (const auto* u : {&u1, &u2}) {
    if (max_abs(*u * u->adjoint() - id) > 1e-9 || max_abs(u->adjoint() * *u - id) > 1e-9) {
      throw InvalidArgument("U1 and U2 must be unitary");
    }
  }
  if (m < 1 || n < 1) throw InvalidArgument("cross arms must have length at least 1");

  CrossCertificate cert;
  cert.u1 = u1;
  cert.u2 = u2;
  cert.m = m;
  cert.n = n;
  auto power = [&](const ComplexMatrix& u, int k) {
    ComplexMatrix base = k >= 0 ? u : ComplexMatrix(u.adjoint());
    ComplexMatrix out = id;
    for (int i = 0; i < std::abs(k); ++i) out = out * base;
    return out;
  };
  auto toeplitz_blocks = [&](const ComplexMatrix& u, int len) {
    ComplexMatrix t(static_cast<Eigen::Index>(len + 1) * d, static_cast<Eigen::Index>(len + 1) * d);
    for (int i = 0; i <= len; ++i) {
      for (int j = 0; j <= len; ++j) t.block(i * d, j * d, d, d) = power(u, j - i);
    }
    return completion::min_eigenvalue(completion::hermitian_part(t));
  };
  cert.first_toeplitz_min_eigenvalue = toeplitz_blocks(u1, m);
  cert.second_toeplitz_min_eigenvalue = toeplitz_blocks(u2, n);
  cert.toeplitz_psd = cert.first_toeplitz_min_eigenvalue >= -tol && cert.second_toeplitz_min_eigenvalue >= -tol;

  cert.first_axis_chain = chain({z2(0, 0), z2(1, 0), z2(1, 1)}, id, u1, u2, tol);
  cert.second_axis_chain = chain({z2(0, 0), z2(0, 1), z2(1, 1)}, id, u2, u1, tol);
  if (cert.first_axis_chain.ball.unique) cert.forced_first = cert.first_axis_chain.ball.center;
  if (cert.second_axis_chain.ball.unique) cert.forced_second = cert.second_axis_chain.ball.center;
  if (cert.forced_first && cert.forced_second) {
    cert.forced_gap = completion::operator_norm(*cert.forced_first - *cert.forced_second);
    cert.extendable = cert.forced_gap <= tol;
  } else {
    cert.extendable = true;  // no forcing, no conflict
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Trigonometric moments

ComplexMatrix toeplitz(std::span<const Complex> moments) {
  const Eigen::Index n = static_cast<Eigen::Index>(moments.size());
  ComplexMatrix t(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = i >= j ? moments[i - j] : std::conj(moments[j - i]);
  }
  return t;
}

std::vector<Complex> atom_moments(std::span<const Atom> atoms, int m) {
  std::vector<Complex> c(m + 1, Complex(0.0, 0.0));
  for (const auto& a : atoms) {
    for (int k = 0; k <= m; ++k) c[k] += a.weight * std::polar(1.0, k * a.frequency);
  }
  return c;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Atoms from a singular Toeplitz matrix on c_0..c_k whose leading k x k block
// is invertible: the kernel vector u = [T_k^-1 t; -1] defines a polynomial
// sum conj(u_j) z^j whose roots are the atoms.
std::optional<std::vector<Atom>> atoms_from_singular(const std::vector<Complex>& c) {
  const int k = static_cast<int>(c.size()) - 1;
  ComplexMatrix full = toeplitz(c);
  Eigen::VectorXcd u(k + 1);
  if (k > 0) {
    Eigen::LDLT<ComplexMatrix> ldlt(full.topLeftCorner(k, k));
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    u.head(k) = ldlt.solve(full.block(0, k, k, 1));
  }
  u(k) = -1.0;

  Eigen::VectorXcd roots(k);
  if (k > 0) {
    // companion matrix of the monic polynomial sum conj(u_j)/conj(u_k) z^j
    ComplexMatrix companion = ComplexMatrix::Zero(k, k);
    const Complex lead = std::conj(u(k));
    for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < k; ++i) companion(i, k - 1) = -std::conj(u(i)) / lead;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(companion, false);
    if (es.info() != Eigen::Success) return std::nullopt;
    roots = es.eigenvalues();
  }
  std::vector<Atom> atoms;
  ComplexMatrix vandermonde(c.size(), k);
  for (int p = 0; p < k; ++p) {
    // ill-conditioned data moves the roots slightly off the circle; they are
    // projected back and the caller checks the reconstruction
    if (std::abs(std::abs(roots(p)) - 1.0) > 1e-3) return std::nullopt;
    double alpha = std::arg(roots(p));
    if (alpha < 0) alpha += kTwoPi;
    if (alpha >= kTwoPi) alpha -= kTwoPi;
    atoms.push_back({0.0, alpha});
    for (std::size_t j = 0; j < c.size(); ++j) vandermonde(j, p) = std::polar(1.0, j * alpha);
  }
  Eigen::VectorXcd rhs(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) rhs(j) = c[j];
  Eigen::VectorXcd w = vandermonde.completeOrthogonalDecomposition().solve(rhs);
  for (int p = 0; p < k; ++p) atoms[p].weight = w(p).real();
  return atoms;
}

}  // namespace

std::vector<Atom> caratheodory_fejer(std::span<const Complex> moments, double tol) {
  if (moments.empty()) throw InvalidArgument("at least c_0 is required");
  const double c0 = moments[0].real();
  if (!(c0 > 0) || std::abs(moments[0].imag()) > 1e-12 * std::abs(c0)) {
    throw NotPsd("c_0 must be real and positive", c0);
  }
  for (const auto& c : moments) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidArgument("moments must be finite");
  }
  std::vector<Complex> c(moments.begin(), moments.end());
  c[0] = c0;
  const int m = static_cast<int>(c.size()) - 1;
  ComplexMatrix t = toeplitz(c);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(t, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev(0) < -tol * c0) throw NotPsd("the Toeplitz matrix of the moments is not PSD", ev(0));

  const double rank_cut = 1e-10 * ev(m);
  int rank = 0;
  for (int i = 0; i <= m; ++i) rank += ev(i) > rank_cut ? 1 : 0;

  auto accept = [&](std::vector<Atom> atoms) -> std::optional<std::vector<Atom>> {
    std::vector<Atom> kept;
    for (const auto& a : atoms) {
      if (a.weight < -1e-9 * c0) return std::nullopt;
      if (a.weight > 1e-14 * c0) kept.push_back(a);
    }
    auto back = atom_moments(kept, m);
    for (int k = 0; k <= m; ++k) {
      if (std::abs(back[k] - c[k]) > 1e-6 * c0) return std::nullopt;
    }
    std::sort(kept.begin(), kept.end(),
              [](const Atom& a, const Atom& b) { return a.frequency < b.frequency; });
    return kept;
  };

  if (rank <= m) {
    // the leading (rank+1) block is singular with an invertible rank block
    std::vector<Complex> head(c.begin(), c.begin() + rank + 1);
    if (auto atoms = atoms_from_singular(head)) {
      if (auto ok = accept(std::move(*atoms))) return *ok;
    }
  }

  // Extend by c_(m+1) on the boundary of its ball so the Toeplitz matrix on
  // c_0..c_(m+1) becomes singular; later attempts rotate the boundary point.
  const ComplexMatrix a = t.topLeftCorner(1, 1);
  const ComplexMatrix b = t.block(0, 1, 1, m);
  const ComplexMatrix cc = t.bottomRightCorner(m, m);
  ComplexMatrix dd(m, 1);
  for (int i = 1; i <= m; ++i) dd(i - 1, 0) = std::conj(c[m + 1 - i]);
  completion::MatrixBall ball = completion::matrix_ball(a, b, cc, dd, a, tol);
  for (int attempt = 0; attempt < 8; ++attempt) {
    ComplexMatrix k(1, 1);
    k(0, 0) = std::polar(1.0, attempt * kTwoPi / 8.0 + (attempt ? 0.37 : 0.0));
    Complex x = ball.point(k)(0, 0);
    std::vector<Complex> extended = c;
    extended.push_back(std::conj(x));
    if (auto atoms = atoms_from_singular(extended)) {
      if (auto ok = accept(std::move(*atoms))) return *ok;
    }
  }
  // Shift c_0 down by the smallest eigenvalue; the removed mass goes back as
  // equal weights on m+1 equally spaced points, which have zero moments 1..m.
  const double shift = std::max(ev(0), 0.0);
  std::vector<Complex> shifted = c;
  shifted[0] -= shift;
  int shifted_rank = 0;
  for (int i = 0; i <= m; ++i) shifted_rank += ev(i) - shift > rank_cut ? 1 : 0;
  if (shifted_rank >= 1) {
    std::vector<Complex> head(shifted.begin(), shifted.begin() + std::min(shifted_rank, m) + 1);
    if (auto atoms = atoms_from_singular(head)) {
      for (int j = 0; j <= m && shift > 0; ++j) atoms->push_back({shift / (m + 1), kTwoPi * j / (m + 1)});
      if (auto ok = accept(std::move(*atoms))) return *ok;
    }
  }
  throw NumericalError("Carathéodory-Fejér decomposition failed: roots off the unit circle");
}

ScalarGrid cross_scalar_extend(std::span<const Complex> h_moments,
                               std::span<const Complex> v_moments, int k_max, int l_max,
                               double tol) {
  if (h_moments.empty() || v_moments.empty()) throw InvalidArgument("moment lists must be nonempty");
  if (k_max < 0 || l_max < 0) throw InvalidArgument("grid half-widths must be nonnegative");
  const Complex c0 = h_moments[0];
  if (std::abs(c0 - v_moments[0]) > 1e-12 * std::max(1.0, std::abs(c0))) {
    throw InvalidArgument("the two sequences must share c_0");
  }
  auto h = caratheodory_fejer(h_moments, tol);
  auto v = caratheodory_fejer(v_moments, tol);
  ScalarGrid grid;
  grid.k_max = k_max;
  grid.l_max = l_max;
  grid.values = ComplexMatrix::Zero(2 * k_max + 1, 2 * l_max + 1);
  for (const auto& p : h) {
    for (const auto& q : v) {
      const double w = p.weight * q.weight / c0.real();
      for (int k = -k_max; k <= k_max; ++k) {
        for (int l = -l_max; l <= l_max; ++l) {
          grid.values(k + k_max, l + l_max) += w * std::polar(1.0, k * p.frequency + l * q.frequency);
        }
      }
    }
  }
  return grid;
}

}  // namespace chordext::extend
