#pragma once

// Hermitian block matrices: positivity tests, pseudo-inverses and square roots
// of PSD matrices, the one-missing-block matrix ball, and completion of
// partially specified PSD matrices over chordal patterns.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chordext/config.hpp"
#include "chordext/graphs.hpp"

namespace chordext::completion {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kDefaultRankTol = 1e-10;

/// max |M - M*| over entries.
double hermitian_defect(const ComplexMatrix& m);

/// (M + M*)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix. Throws InvalidArgument if M is
/// not square or not Hermitian within 1e-12 (relative to its largest entry).
double min_eigenvalue(const ComplexMatrix& m);

bool is_psd(const ComplexMatrix& m, double tol = kDefaultTol);

/// Moore-Penrose pseudo-inverse of a PSD matrix; eigenvalues below
/// rank_tol * lambda_max count as zero. Throws NotPsd below -tol.
ComplexMatrix pinv_psd(const ComplexMatrix& c, double rank_tol = kDefaultRankTol,
                       double tol = kDefaultTol);

/// Principal square root of a PSD matrix. Throws NotPsd below -tol.
ComplexMatrix sqrt_psd(const ComplexMatrix& c, double tol = kDefaultTol);

/// Spectral norm.
double operator_norm(const ComplexMatrix& m);

/// Fast PSD decision for large blocks: a Gershgorin bound, then a Cholesky
/// attempt on M + tol*I, then the eigenvalue test. Sets *min_eig to the
/// smallest eigenvalue when the eigenvalue test ran, to NaN otherwise.
bool psd_within(const ComplexMatrix& m, double tol, double* min_eig = nullptr);

/// All X with [[A,B,X],[B*,C,D],[X*,D*,E]] >= 0 are center + left*K*right
/// with ||K|| <= 1.
struct MatrixBall {
  ComplexMatrix center;
  ComplexMatrix left_radius;
  ComplexMatrix right_radius;
  bool unique = false;

  /// center + left * k * right
  ComplexMatrix point(const ComplexMatrix& k) const;
};

MatrixBall matrix_ball(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ComplexMatrix& d, const ComplexMatrix& e, double tol = kDefaultTol,
                       double rank_tol = kDefaultRankTol);

/// The center when the ball is a single point.
std::optional<ComplexMatrix> forced_entry(const ComplexMatrix& a, const ComplexMatrix& b,
                                          const ComplexMatrix& c, const ComplexMatrix& d,
                                          const ComplexMatrix& e, double tol = kDefaultTol);

/// [[A,B,X],[B*,C,D],[X*,D*,E]]
ComplexMatrix assemble_three_block(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const ComplexMatrix& c, const ComplexMatrix& d,
                                   const ComplexMatrix& e, const ComplexMatrix& x);

/// True when x = center + L K R for some contraction K (within tol).
bool ball_contains(const MatrixBall& ball, const ComplexMatrix& x, double tol = kDefaultTol);

struct BallIntersection {
  enum class Kind { kEmpty, kPoint, kContinuum };
  Kind kind = Kind::kEmpty;
  std::optional<ComplexMatrix> point;
};

/// Intersects the affine supports {center + L K R : K arbitrary} of two
/// balls; a single common point is then tested for membership in both.
BallIntersection intersect_balls(const MatrixBall& first, const MatrixBall& second,
                                 double tol = kDefaultTol);

/// Hermitian n x n block matrix with d x d blocks, specified on the diagonal
/// and on the edges of a pattern graph.
class PartialBlockMatrix {
 public:
  PartialBlockMatrix(int n, int d);

  int size() const { return n_; }
  int block_dim() const { return d_; }

  /// Sets block (i,j) and its mirror (j,i) = value*; off-diagonal pairs join
  /// the pattern.
  void set_block(int i, int j, const ComplexMatrix& value);
  bool specified(int i, int j) const;
  /// Throws InvalidArgument for unspecified blocks.
  ComplexMatrix block(int i, int j) const;

  const graphs::Graph& pattern() const { return pattern_; }
  /// Dense n*d square matrix; unspecified blocks hold zeros.
  const ComplexMatrix& values() const { return values_; }

  /// Throws InvalidArgument unless every diagonal block is set and Hermitian.
  void validate() const;

 private:
  int n_;
  int d_;
  graphs::Graph pattern_;
  std::vector<char> diagonal_set_;
  ComplexMatrix values_;
};

/// Principal submatrix of the dense values on the given block indices.
ComplexMatrix block_submatrix(const ComplexMatrix& values, int d, const std::vector<int>& rows,
                              const std::vector<int>& cols);

struct PartialPsdCheck {
  bool ok = true;
  std::size_t clique_count = 0;
  // failing clique (empty when ok)
  std::size_t clique_index = 0;
  std::vector<int> clique;
  double min_eigenvalue = 0.0;
};

/// Tests every maximal clique of the pattern. Throws CapExceeded past
/// `clique_cap` cliques.
PartialPsdCheck verify_partial_psd(const PartialBlockMatrix& p, double tol = kDefaultTol,
                                   std::size_t clique_cap = 10000);

/// Central completion over a chordal pattern. Vertices are added in reverse
/// perfect elimination order; each new row is X = K(v,C) K(C,C)^+ K(C,R) for
/// the clique C of already placed neighbours and the remaining placed
/// vertices R. Specified blocks are copied, never recomputed.
/// Throws NotChordal or CliqueNotPsd.
ComplexMatrix chordal_complete(const PartialBlockMatrix& p, double tol = kDefaultTol);

/// Reference completion filling one missing pair at a time: the first pair
/// in lexicographic order whose common neighbourhood C makes {i}+C and
/// {j}+C cliques and keeps the pattern chordal gets the matrix-ball center.
/// Quadratic in the number of missing pairs; meant for small inputs.
ComplexMatrix chordal_complete_pairwise(const PartialBlockMatrix& p, double tol = kDefaultTol);

}  // namespace chordext::completion
