#include <gtest/gtest.h>

#include <random>

#include "chordext/completion.hpp"
#include "chordext/errors.hpp"
#include "oracles.hpp"

using namespace chordext;
using namespace chordext::completion;

namespace {

// Masks a full PSD matrix to the given pattern.
PartialBlockMatrix mask(const ComplexMatrix& full, const graphs::Graph& g, int d) {
  PartialBlockMatrix p(g.size(), d);
  for (int i = 0; i < g.size(); ++i) p.set_block(i, i, full.block(i * d, i * d, d, d));
  for (const auto& [i, j] : g.edges()) p.set_block(i, j, full.block(i * d, j * d, d, d));
  return p;
}

ComplexMatrix scalar(double v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

TEST(Completion, HermitianHelpers) {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(2, 1), Complex(2, 0), 3.0;
  EXPECT_NEAR(hermitian_defect(m), 1.0, 1e-15);
  EXPECT_NEAR(hermitian_defect(hermitian_part(m)), 0.0, 1e-15);
  EXPECT_THROW(min_eigenvalue(m), InvalidArgument);
  EXPECT_THROW(min_eigenvalue(ComplexMatrix(2, 3)), InvalidArgument);
  EXPECT_TRUE(std::isinf(min_eigenvalue(ComplexMatrix(0, 0))));
  ComplexMatrix d = ComplexMatrix::Identity(3, 3);
  d(2, 2) = -1e-10;
  EXPECT_TRUE(is_psd(d));
  EXPECT_FALSE(is_psd(d, 1e-12));
}

TEST(Completion, PseudoInverseAndSquareRoot) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 6;
    int r = 1 + t % n;
    ComplexMatrix c = oracle::random_psd(n, r, rng);
    ComplexMatrix p = pinv_psd(c);
    EXPECT_LT((c * p * c - c).norm(), 1e-8 * c.norm());
    EXPECT_LT((p * c * p - p).norm(), 1e-8 * std::max(1.0, p.norm()));
    EXPECT_LT(((c * p).adjoint() - c * p).norm(), 1e-8);
    ComplexMatrix s = sqrt_psd(c);
    EXPECT_LT((s * s - c).norm(), 1e-8 * c.norm());
    EXPECT_GE(oracle::min_eig(s), -1e-8);
  }
  EXPECT_THROW(pinv_psd(scalar(-1.0)), NotPsd);
  EXPECT_THROW(sqrt_psd(scalar(-1.0)), NotPsd);
  EXPECT_NEAR(operator_norm(scalar(-3.0)), 3.0, 1e-15);
}

TEST(Completion, FastPsdTestAgreesWithEigenvalues) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + t % 12;
    ComplexMatrix m = oracle::random_psd(n, n, rng);
    m /= m.norm();
    double lo = oracle::min_eig(m);
    m += (shift(rng) - lo) * ComplexMatrix::Identity(n, n);
    double want = oracle::min_eig(m);
    if (std::abs(want) < 1e-6) continue;
    double got = 0.0;
    EXPECT_EQ(psd_within(m, 1e-9, &got), want >= -1e-9);
    if (!std::isnan(got)) EXPECT_NEAR(got, want, 1e-9);
  }
  // diagonally dominant: decided without an eigensolve
  ComplexMatrix dd = 4.0 * ComplexMatrix::Identity(3, 3) + ComplexMatrix::Ones(3, 3);
  double got = 0.0;
  EXPECT_TRUE(psd_within(dd, 1e-9, &got));
}

TEST(Completion, MatrixBallContainsEveryCompletion) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    int p = 1 + t % 3, q = 1 + (t / 3) % 3, r = 1 + (t / 9) % 3;
    int rank = 1 + t % (p + q + r);
    ComplexMatrix m = oracle::random_psd(p + q + r, rank, rng);
    ComplexMatrix a = m.block(0, 0, p, p), b = m.block(0, p, p, q), x = m.block(0, p + q, p, r);
    ComplexMatrix c = m.block(p, p, q, q), d = m.block(p, p + q, q, r), e = m.block(p + q, p + q, r, r);
    MatrixBall ball = matrix_ball(a, b, c, d, e);
    EXPECT_TRUE(ball_contains(ball, x, 1e-6)) << "t=" << t;
    EXPECT_GE(oracle::min_eig(assemble_three_block(a, b, c, d, e, ball.center)), -1e-8);
    for (int s = 0; s < 5; ++s) {
      ComplexMatrix k = oracle::random_matrix(ball.left_radius.cols(), ball.right_radius.rows(), rng);
      if (k.size()) k /= oracle::spectral_norm(k);
      EXPECT_GE(oracle::min_eig(assemble_three_block(a, b, c, d, e, ball.point(k))), -1e-8);
    }
  }
}

TEST(Completion, ForcedEntryWhenMiddleIsSingular) {
  // [[1,1,x],[1,1,1],[x,1,1]] is PSD only for x = 1.
  auto one = scalar(1.0);
  auto f = forced_entry(one, one, one, one, one);
  ASSERT_TRUE(f.has_value());
  EXPECT_NEAR(std::abs((*f)(0, 0) - 1.0), 0.0, 1e-12);
  // with C = 2 the ball has radius 1/2 around 1/2
  auto ball = matrix_ball(one, one, scalar(2.0), one, one);
  EXPECT_FALSE(ball.unique);
  EXPECT_NEAR(ball.center(0, 0).real(), 0.5, 1e-12);
  EXPECT_TRUE(ball_contains(ball, scalar(1.0)));
  EXPECT_TRUE(ball_contains(ball, scalar(0.0)));
  EXPECT_FALSE(ball_contains(ball, scalar(1.2)));
  EXPECT_THROW(matrix_ball(scalar(-1.0), one, one, one, one), NotPsd);
}

TEST(Completion, BallIntersections) {
  auto one = scalar(1.0);
  auto point_one = matrix_ball(one, one, one, one, one);
  auto ball = matrix_ball(one, one, scalar(2.0), one, one);
  auto i1 = intersect_balls(point_one, ball);
  EXPECT_EQ(i1.kind, BallIntersection::Kind::kPoint);
  ASSERT_TRUE(i1.point);
  EXPECT_NEAR(std::abs((*i1.point)(0, 0) - 1.0), 0.0, 1e-12);
  auto point_minus = matrix_ball(one, one, one, scalar(-1.0), one);
  EXPECT_EQ(intersect_balls(point_one, point_minus).kind, BallIntersection::Kind::kEmpty);
  EXPECT_EQ(intersect_balls(ball, ball).kind, BallIntersection::Kind::kContinuum);
}

TEST(Completion, PartialBlockMatrixBookkeeping) {
  PartialBlockMatrix p(3, 2);
  ComplexMatrix b(2, 2);
  b << 1.0, Complex(0, 2), 3.0, 4.0;
  p.set_block(0, 1, b);
  EXPECT_TRUE(p.specified(1, 0));
  EXPECT_TRUE((p.block(1, 0) - b.adjoint()).norm() < 1e-15);
  EXPECT_THROW(p.block(0, 2), InvalidArgument);
  EXPECT_THROW(p.validate(), InvalidArgument);  // diagonal unset
  for (int i = 0; i < 3; ++i) p.set_block(i, i, ComplexMatrix::Identity(2, 2));
  EXPECT_NO_THROW(p.validate());
  p.set_block(0, 0, b);
  EXPECT_THROW(p.validate(), InvalidArgument);  // non-Hermitian diagonal
  EXPECT_THROW(p.set_block(0, 1, ComplexMatrix::Identity(3, 3)), InvalidArgument);
  EXPECT_TRUE(p.pattern().has_edge(0, 1));
}

TEST(Completion, CentralCompletionOnRandomChordalPatterns) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 150; ++t) {
    int n = 2 + t % 7, d = 1 + t % 2;
    auto g = oracle::random_chordal_graph(n, 0.35, rng);
    ComplexMatrix full = oracle::random_psd(n * d, n * d, rng);
    auto p = mask(full, g, d);
    ComplexMatrix w = chordal_complete(p);
    EXPECT_GE(oracle::min_eig(w), -1e-7);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i == j || g.has_edge(i, j))
          EXPECT_LT((w.block(i * d, j * d, d, d) - full.block(i * d, j * d, d, d)).norm(), 1e-12);
    // maximum-determinant completion: the inverse vanishes off the pattern
    ComplexMatrix inv = w.inverse();
    double scale = inv.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !g.has_edge(i, j))
          EXPECT_LT(inv.block(i * d, j * d, d, d).cwiseAbs().maxCoeff(), 1e-6 * scale);
    ComplexMatrix wp = chordal_complete_pairwise(p);
    EXPECT_LT((w - wp).norm(), 1e-6 * w.norm());
  }
}

TEST(Completion, RankDeficientCompletion) {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 60; ++t) {
    int n = 3 + t % 5;
    auto g = oracle::random_chordal_graph(n, 0.4, rng);
    ComplexMatrix full = oracle::random_psd(n, 1 + t % 2, rng);
    auto p = mask(full, g, 1);
    EXPECT_GE(oracle::min_eig(chordal_complete(p)), -1e-7);
    EXPECT_GE(oracle::min_eig(chordal_complete_pairwise(p)), -1e-7);
  }
}

TEST(Completion, NonChordalAndNonPsdInputs) {
  PartialBlockMatrix c4(4, 1);
  for (int i = 0; i < 4; ++i) c4.set_block(i, i, scalar(1.0));
  for (int i = 0; i < 4; ++i) c4.set_block(i, (i + 1) % 4, scalar(0.5));
  try {
    chordal_complete(c4);
    FAIL() << "expected NotChordal";
  } catch (const NotChordal& e) {
    EXPECT_EQ(e.cycle().size(), 4u);
  }

  PartialBlockMatrix bad(3, 1);
  for (int i = 0; i < 3; ++i) bad.set_block(i, i, scalar(1.0));
  bad.set_block(0, 1, scalar(2.0));
  bad.set_block(1, 2, scalar(0.5));
  auto check = verify_partial_psd(bad);
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.clique, (std::vector<int>{0, 1}));
  EXPECT_NEAR(check.min_eigenvalue, -1.0, 1e-12);
  EXPECT_THROW(chordal_complete(bad), CliqueNotPsd);
  EXPECT_THROW(chordal_complete_pairwise(bad), CliqueNotPsd);
}

TEST(Completion, BandedToeplitzCompletesGeometrically) {
  // Tridiagonal Toeplitz data (1, r) completes to r^|i-j|.
  const int n = 7;
  const double r = 0.5;
  PartialBlockMatrix p(n, 1);
  for (int i = 0; i < n; ++i) p.set_block(i, i, scalar(1.0));
  for (int i = 0; i + 1 < n; ++i) p.set_block(i, i + 1, scalar(r));
  ComplexMatrix w = chordal_complete(p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) EXPECT_NEAR(std::abs(w(i, j) - std::pow(r, std::abs(i - j))), 0.0, 1e-12);
}
