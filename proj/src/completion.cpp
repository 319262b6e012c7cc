#include "chordext/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chordext/errors.hpp"

namespace chordext::completion {

namespace {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  if (hermitian_defect(m) > 1e-12 * std::max(1.0, max_abs(m))) {
    throw InvalidArgument(std::string(what) + ": matrix is not Hermitian (defect " +
                          std::to_string(hermitian_defect(m)) + ")");
  }
}

using EigenSolver = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;

// Eigendecomposition of the Hermitian part; throws NotPsd below -tol*scale.
EigenSolver psd_eigen(const ComplexMatrix& c, double tol, const char* what) {
  require_hermitian(c, what);
  EigenSolver es(hermitian_part(c));
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, std::abs(ev(ev.size() - 1)));
  if (ev(0) < -tol * scale) {
    throw NotPsd(std::string(what) + ": matrix is not positive semidefinite", ev(0));
  }
  return es;
}

// Square root with eigenvalues at or below `zero_below` set to zero.
ComplexMatrix thresholded_sqrt(const ComplexMatrix& h, double zero_below) {
  if (h.rows() == 0) return h;
  EigenSolver es(h);
  Eigen::VectorXd s = es.eigenvalues();
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = s(i) <= zero_below ? 0.0 : std::sqrt(s(i));
  return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) * 0.5; }

double min_eigenvalue(const ComplexMatrix& m) {
  require_hermitian(m, "min_eigenvalue");
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  EigenSolver es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const ComplexMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

ComplexMatrix pinv_psd(const ComplexMatrix& c, double rank_tol, double tol) {
  if (c.rows() == 0) return c;
  EigenSolver es = psd_eigen(c, tol, "pinv_psd");
  const auto& ev = es.eigenvalues();
  double top = ev(ev.size() - 1);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  if (top > 0) {
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) > rank_tol * top) inv(i) = 1.0 / ev(i);
    }
  }
  return es.eigenvectors() * inv.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& c, double tol) {
  if (c.rows() == 0) return c;
  EigenSolver es = psd_eigen(c, tol, "sqrt_psd");
  Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

bool psd_within(const ComplexMatrix& m, double tol, double* min_eig) {
  if (min_eig) *min_eig = std::numeric_limits<double>::quiet_NaN();
  require_square(m, "psd_within");
  const Eigen::Index n = m.rows();
  if (n == 0) return true;
  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
  const double slack = tol * scale;

  bool gershgorin = true;
  for (Eigen::Index i = 0; i < n && gershgorin; ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) off += std::abs(m(i, j));
    }
    gershgorin = m(i, i).real() - off >= -slack;
  }
  if (gershgorin) return true;

  ComplexMatrix shifted = hermitian_part(m);
  shifted.diagonal().array() += slack;
  if (shifted.llt().info() == Eigen::Success) return true;

  double lo = min_eigenvalue(hermitian_part(m));
  if (min_eig) *min_eig = lo;
  return lo >= -slack;
}

// ---------------------------------------------------------------------------
// Matrix ball

ComplexMatrix MatrixBall::point(const ComplexMatrix& k) const {
  return center + left_radius * k * right_radius;
}

ComplexMatrix assemble_three_block(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const ComplexMatrix& c, const ComplexMatrix& d,
                                   const ComplexMatrix& e, const ComplexMatrix& x) {
  const Eigen::Index p = a.rows(), q = c.rows(), r = e.rows();
  ComplexMatrix m(p + q + r, p + q + r);
  m.block(0, 0, p, p) = a;
  m.block(0, p, p, q) = b;
  m.block(0, p + q, p, r) = x;
  m.block(p, 0, q, p) = b.adjoint();
  m.block(p, p, q, q) = c;
  m.block(p, p + q, q, r) = d;
  m.block(p + q, 0, r, p) = x.adjoint();
  m.block(p + q, p, r, q) = d.adjoint();
  m.block(p + q, p + q, r, r) = e;
  return m;
}

MatrixBall matrix_ball(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ComplexMatrix& d, const ComplexMatrix& e, double tol,
                       double rank_tol) {
  require_hermitian(a, "matrix_ball A");
  require_hermitian(c, "matrix_ball C");
  require_hermitian(e, "matrix_ball E");
  const Eigen::Index p = a.rows(), q = c.rows(), r = e.rows();
  if (b.rows() != p || b.cols() != q || d.rows() != q || d.cols() != r) {
    throw InvalidArgument("matrix_ball: inconsistent block dimensions");
  }

  ComplexMatrix left_corner(p + q, p + q);
  left_corner.topLeftCorner(p, p) = a;
  left_corner.topRightCorner(p, q) = b;
  left_corner.bottomLeftCorner(q, p) = b.adjoint();
  left_corner.bottomRightCorner(q, q) = c;
  ComplexMatrix right_corner(q + r, q + r);
  right_corner.topLeftCorner(q, q) = c;
  right_corner.topRightCorner(q, r) = d;
  right_corner.bottomLeftCorner(r, q) = d.adjoint();
  right_corner.bottomRightCorner(r, r) = e;
  double lmin = min_eigenvalue(left_corner);
  if (lmin < -tol * std::max(1.0, max_abs(left_corner))) {
    throw NotPsd("matrix_ball: left corner [[A,B],[B*,C]] is not PSD", lmin);
  }
  double rmin = min_eigenvalue(right_corner);
  if (rmin < -tol * std::max(1.0, max_abs(right_corner))) {
    throw NotPsd("matrix_ball: right corner [[C,D],[D*,E]] is not PSD", rmin);
  }

  MatrixBall ball;
  ComplexMatrix left_defect = a;
  ComplexMatrix right_defect = e;
  if (q == 0) {
    ball.center = ComplexMatrix::Zero(p, r);
  } else {
    ComplexMatrix cp = pinv_psd(c, rank_tol, tol);
    ball.center = b * cp * d;
    left_defect -= b * cp * b.adjoint();
    right_defect -= d.adjoint() * cp * d;
  }
  double scale = std::max({1.0, max_abs(a), max_abs(c), max_abs(e)});
  ball.left_radius = thresholded_sqrt(hermitian_part(left_defect), tol * scale);
  ball.right_radius = thresholded_sqrt(hermitian_part(right_defect), tol * scale);
  ball.unique = operator_norm(ball.left_radius) <= tol || operator_norm(ball.right_radius) <= tol;
  return ball;
}

std::optional<ComplexMatrix> forced_entry(const ComplexMatrix& a, const ComplexMatrix& b,
                                          const ComplexMatrix& c, const ComplexMatrix& d,
                                          const ComplexMatrix& e, double tol) {
  MatrixBall ball = matrix_ball(a, b, c, d, e, tol);
  if (!ball.unique) return std::nullopt;
  return ball.center;
}

bool ball_contains(const MatrixBall& ball, const ComplexMatrix& x, double tol) {
  if (x.rows() != ball.center.rows() || x.cols() != ball.center.cols()) return false;
  ComplexMatrix delta = x - ball.center;
  ComplexMatrix k = pinv_psd(ball.left_radius, kDefaultRankTol, tol) * delta *
                    pinv_psd(ball.right_radius, kDefaultRankTol, tol);
  double residual = max_abs(ball.left_radius * k * ball.right_radius - delta);
  return residual <= tol * std::max(1.0, max_abs(delta)) && operator_norm(k) <= 1.0 + tol;
}

namespace {

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

// Rows of the linear system (I - P_L)(X - c) = 0, (X - c)(I - P_R) = 0 in
// column-major vec(X).
void append_support(const MatrixBall& ball, double tol, std::vector<ComplexMatrix>& rows,
                    std::vector<Eigen::VectorXcd>& rhs) {
  const Eigen::Index p = ball.center.rows(), r = ball.center.cols();
  ComplexMatrix left_perp = ComplexMatrix::Identity(p, p) -
                            ball.left_radius * pinv_psd(ball.left_radius, kDefaultRankTol, tol);
  ComplexMatrix right_perp = ComplexMatrix::Identity(r, r) -
                             ball.right_radius * pinv_psd(ball.right_radius, kDefaultRankTol, tol);
  rows.push_back(kron(ComplexMatrix::Identity(r, r), left_perp));
  ComplexMatrix lc = left_perp * ball.center;
  rhs.push_back(Eigen::Map<const Eigen::VectorXcd>(lc.data(), lc.size()));
  rows.push_back(kron(right_perp.transpose(), ComplexMatrix::Identity(p, p)));
  ComplexMatrix cr = ball.center * right_perp;
  rhs.push_back(Eigen::Map<const Eigen::VectorXcd>(cr.data(), cr.size()));
}

}  // namespace

BallIntersection intersect_balls(const MatrixBall& first, const MatrixBall& second, double tol) {
  const Eigen::Index p = first.center.rows(), r = first.center.cols();
  if (second.center.rows() != p || second.center.cols() != r) {
    throw InvalidArgument("intersect_balls: balls live in different matrix shapes");
  }
  std::vector<ComplexMatrix> rows;
  std::vector<Eigen::VectorXcd> rhs;
  append_support(first, tol, rows, rhs);
  append_support(second, tol, rows, rhs);
  Eigen::Index total = 0;
  for (const auto& m : rows) total += m.rows();
  ComplexMatrix system(total, p * r);
  Eigen::VectorXcd target(total);
  Eigen::Index at = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    system.middleRows(at, rows[k].rows()) = rows[k];
    target.segment(at, rhs[k].size()) = rhs[k];
    at += rows[k].rows();
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(system, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > cutoff ? 1 : 0;
  svd.setThreshold(cutoff / std::max(1.0, sv.size() ? sv(0) : 1.0));
  Eigen::VectorXcd x = svd.solve(target);
  double residual = (system * x - target).cwiseAbs().maxCoeff();

  BallIntersection out;
  if (residual > tol * std::max(1.0, target.cwiseAbs().maxCoeff())) return out;
  if (rank < p * r) {
    out.kind = BallIntersection::Kind::kContinuum;
    return out;
  }
  ComplexMatrix point = Eigen::Map<ComplexMatrix>(x.data(), p, r);
  if (ball_contains(first, point, tol) && ball_contains(second, point, tol)) {
    out.kind = BallIntersection::Kind::kPoint;
    out.point = point;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial block matrices

PartialBlockMatrix::PartialBlockMatrix(int n, int d)
    : n_(n), d_(d), pattern_(n), diagonal_set_(n, 0) {
  if (d < 1) throw InvalidArgument("block dimension must be positive");
  values_ = ComplexMatrix::Zero(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
}

void PartialBlockMatrix::set_block(int i, int j, const ComplexMatrix& value) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw InvalidArgument("block index out of range");
  if (value.rows() != d_ || value.cols() != d_) {
    throw InvalidArgument("block must be " + std::to_string(d_) + "x" + std::to_string(d_));
  }
  values_.block(i * d_, j * d_, d_, d_) = value;
  if (i == j) {
    diagonal_set_[i] = 1;
    return;
  }
  values_.block(j * d_, i * d_, d_, d_) = value.adjoint();
  pattern_.add_edge(i, j);
}

bool PartialBlockMatrix::specified(int i, int j) const {
  if (i == j) return i >= 0 && i < n_ && diagonal_set_[i];
  return pattern_.has_edge(i, j);
}

ComplexMatrix PartialBlockMatrix::block(int i, int j) const {
  if (!specified(i, j)) {
    throw InvalidArgument("block (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not specified");
  }
  return values_.block(i * d_, j * d_, d_, d_);
}

void PartialBlockMatrix::validate() const {
  for (int i = 0; i < n_; ++i) {
    if (!diagonal_set_[i]) {
      throw InvalidArgument("diagonal block " + std::to_string(i) + " is not specified");
    }
    ComplexMatrix b = values_.block(i * d_, i * d_, d_, d_);
    if (hermitian_defect(b) > 1e-12 * std::max(1.0, max_abs(b))) {
      throw InvalidArgument("diagonal block " + std::to_string(i) + " is not Hermitian");
    }
  }
}

ComplexMatrix block_submatrix(const ComplexMatrix& values, int d, const std::vector<int>& rows,
                              const std::vector<int>& cols) {
  ComplexMatrix out(rows.size() * d, cols.size() * d);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      out.block(a * d, b * d, d, d) = values.block(rows[a] * d, cols[b] * d, d, d);
    }
  }
  return out;
}

namespace {

// First maximal clique whose specified submatrix is not PSD within tol.
PartialPsdCheck check_cliques(const ComplexMatrix& values, int d,
                              const std::vector<std::vector<int>>& cliques, double tol) {
  PartialPsdCheck result;
  result.clique_count = cliques.size();
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    ComplexMatrix sub = block_submatrix(values, d, cliques[k], cliques[k]);
    double lo = 0.0;
    if (psd_within(sub, tol, &lo)) continue;
    result.ok = false;
    result.clique_index = k;
    result.clique = cliques[k];
    result.min_eigenvalue = std::isnan(lo) ? min_eigenvalue(hermitian_part(sub)) : lo;
    return result;
  }
  return result;
}

std::vector<int> require_peo(const graphs::Graph& g) {
  auto cert = graphs::is_chordal(g);
  if (auto* cycle = std::get_if<graphs::ChordlessCycle>(&cert)) {
    throw NotChordal("pattern of specified blocks is not chordal", cycle->cycle);
  }
  return std::get<graphs::PerfectEliminationOrdering>(cert).order;
}

void require_clique_psd(const PartialBlockMatrix& p, const std::vector<int>& peo, double tol) {
  auto cliques = graphs::maximal_cliques_from_peo(p.pattern(), peo);
  PartialPsdCheck check = check_cliques(p.values(), p.block_dim(), cliques, tol);
  if (!check.ok) {
    throw CliqueNotPsd("specified clique " + std::to_string(check.clique_index) +
                           " is not positive semidefinite",
                       check.clique_index, check.clique, check.min_eigenvalue);
  }
}

}  // namespace

PartialPsdCheck verify_partial_psd(const PartialBlockMatrix& p, double tol,
                                   std::size_t clique_cap) {
  p.validate();
  auto cliques = graphs::maximal_cliques(p.pattern(), clique_cap);
  return check_cliques(p.values(), p.block_dim(), cliques, tol);
}

ComplexMatrix chordal_complete(const PartialBlockMatrix& p, double tol) {
  p.validate();
  const graphs::Graph& g = p.pattern();
  std::vector<int> peo = require_peo(g);
  require_clique_psd(p, peo, tol);

  const int n = p.size();
  const int d = p.block_dim();
  ComplexMatrix k = p.values();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[peo[i]] = i;
  std::vector<int> component(n, -1);
  auto components = graphs::connected_components(g);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int v : components[c]) component[v] = static_cast<int>(c);
  }

  std::vector<std::vector<int>> placed(components.size());
  std::vector<char> in_clique(n, 0);
  for (auto it = peo.rbegin(); it != peo.rend(); ++it) {
    const int v = *it;
    auto& done = placed[component[v]];
    std::vector<int> clique;
    for (int u : g.neighbors(v)) {
      if (pos[u] > pos[v]) clique.push_back(u);
    }
    std::vector<int> rest;
    for (int u : clique) in_clique[u] = 1;
    for (int u : done) {
      if (!in_clique[u]) rest.push_back(u);
    }
    for (int u : clique) in_clique[u] = 0;

    if (!clique.empty() && !rest.empty()) {
      ComplexMatrix kcc = hermitian_part(block_submatrix(k, d, clique, clique));
      ComplexMatrix fill = block_submatrix(k, d, {v}, clique) * pinv_psd(kcc, kDefaultRankTol, tol) *
                           block_submatrix(k, d, clique, rest);
      for (std::size_t r = 0; r < rest.size(); ++r) {
        ComplexMatrix x = fill.block(0, r * d, d, d);
        k.block(v * d, rest[r] * d, d, d) = x;
        k.block(rest[r] * d, v * d, d, d) = x.adjoint();
      }
    }
    done.push_back(v);
  }
  return k;
}

ComplexMatrix chordal_complete_pairwise(const PartialBlockMatrix& p, double tol) {
  p.validate();
  graphs::Graph g = p.pattern();
  std::vector<int> peo = require_peo(g);
  require_clique_psd(p, peo, tol);

  const int n = p.size();
  const int d = p.block_dim();
  ComplexMatrix k = p.values();
  const std::size_t total = static_cast<std::size_t>(n) * (n - 1) / 2;
  while (g.edge_count() < total) {
    bool filled = false;
    for (int i = 0; i < n && !filled; ++i) {
      for (int j = i + 1; j < n && !filled; ++j) {
        if (g.has_edge(i, j)) continue;
        std::vector<int> common;
        auto ni = g.neighbors(i);
        auto nj = g.neighbors(j);
        std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(),
                              std::back_inserter(common));
        std::vector<int> with_i = common;
        with_i.push_back(i);
        std::vector<int> with_j = common;
        with_j.push_back(j);
        if (!g.is_clique(with_i) || !g.is_clique(with_j)) continue;
        graphs::Graph next = g;
        next.add_edge(i, j);
        if (!graphs::certifies_chordal(graphs::is_chordal(next))) continue;

        MatrixBall ball = matrix_ball(
            k.block(i * d, i * d, d, d), block_submatrix(k, d, {i}, common),
            hermitian_part(block_submatrix(k, d, common, common)),
            block_submatrix(k, d, common, {j}), k.block(j * d, j * d, d, d), tol);
        k.block(i * d, j * d, d, d) = ball.center;
        k.block(j * d, i * d, d, d) = ball.center.adjoint();
        g = std::move(next);
        filled = true;
      }
    }
    if (!filled) throw NumericalError("no fillable pair found on a chordal pattern");
  }
  return k;
}

}  // namespace chordext::completion
