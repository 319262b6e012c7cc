#pragma once

// Extension of partially positive definite functions on a symmetric set S to
// windows of the group: kernel construction, chordal completion, Følner
// averaging, the two non-extendability certificates and the scalar
// trigonometric-moment machinery.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chordext/cayley.hpp"
#include "chordext/completion.hpp"
#include "chordext/config.hpp"
#include "chordext/groups.hpp"

namespace chordext::extend {

using completion::Complex;
using completion::ComplexMatrix;
using groups::GroupElement;
using groups::GroupSpec;
using groups::SymmetricSet;

/// phi : S -> d x d complex matrices. One representative per pair {s, s^-1}
/// is stored; phi(s^-1) = phi(s)* is derived on lookup. With `zero_default`
/// every member of S without a stored value maps to 0.
class PDFunctionData {
 public:
  /// Throws InvalidArgument when a key is outside S, both s and s^-1 are
  /// given, a self-inverse value is not Hermitian, shapes disagree, or
  /// phi(e) is missing, non-Hermitian or not PSD.
  PDFunctionData(GroupSpec spec, SymmetricSet set, int d,
                 std::vector<std::pair<GroupElement, ComplexMatrix>> values,
                 bool zero_default = false);

  const GroupSpec& spec() const { return *spec_; }
  const SymmetricSet& set() const { return *set_; }
  int block_dim() const { return d_; }
  bool zero_default() const { return zero_default_; }
  /// Stored representatives in canonical element order.
  const std::vector<std::pair<GroupElement, ComplexMatrix>>& stored() const { return stored_; }

  bool in_set(const GroupElement& x) const;
  /// Throws InvalidArgument for x outside S, MissingValue when S contains x
  /// but no value is stored or generated.
  ComplexMatrix value(const GroupElement& x) const;
  /// As value(); x must be a validated member of S.
  ComplexMatrix value_unchecked(const GroupElement& x) const;

 private:
  std::shared_ptr<const GroupSpec> spec_;
  std::shared_ptr<const SymmetricSet> set_;
  int d_;
  bool zero_default_;
  std::vector<std::pair<GroupElement, ComplexMatrix>> stored_;
  std::unordered_map<GroupElement, std::size_t, groups::ElementHash> index_;
};

struct PdCheck {
  bool ok = true;
  int window_size = 0;
  std::size_t clique_count = 0;
  // failing clique
  std::size_t clique_index = 0;
  std::vector<GroupElement> clique;
  double min_eigenvalue = 0.0;
};

/// Every maximal clique of Gamma(G,S) on ball(radius) has a PSD Gram block
/// matrix {phi(g_i^-1 g_j)}.
PdCheck verify_pd_function(const PDFunctionData& data, int radius,
                           double tol = completion::kDefaultTol, const Caps& caps = {});

/// Blocks phi(x_i^-1 x_j) on the Cayley pattern of the window.
completion::PartialBlockMatrix build_kernel(const PDFunctionData& data, const cayley::Window& w);

/// A completed PSD kernel over a window. Blocks between different components
/// of the Cayley pattern are zero; components that are cliques are read from
/// phi on demand; the rest are completed densely.
class CompletedKernel {
 public:
  const cayley::Window& window() const { return window_; }
  int block_dim() const { return data_->block_dim(); }
  std::size_t component_count() const { return components_.size(); }
  std::size_t dense_component_count() const;

  /// Block K(i, j) for window indices.
  ComplexMatrix block(int i, int j) const;
  /// Full matrix; throws CapExceeded above `max_dim` rows.
  ComplexMatrix dense(std::size_t max_dim) const;
  /// Smallest eigenvalue, taken per component; nullopt when a component is
  /// larger than `max_dim` rows.
  std::optional<double> min_eigenvalue(std::size_t max_dim) const;

 private:
  friend CompletedKernel extend_on_elements(const PDFunctionData&, cayley::Window, double,
                                            const Caps&);
  struct Component {
    std::vector<int> members;
    bool clique = false;
    ComplexMatrix values;  // completed blocks, non-clique components only
  };
  ComplexMatrix component_matrix(const Component& c) const;

  std::shared_ptr<const PDFunctionData> data_;
  cayley::Window window_;
  std::vector<int> component_of_;
  std::vector<int> local_index_;
  std::vector<Component> components_;
};

/// Completes the kernel on an arbitrary window. Throws NotChordal (with the
/// cycle and element labels) or CliqueNotPsd, CapExceeded when a non-clique
/// component is larger than caps.dense_dim rows.
CompletedKernel extend_on_elements(const PDFunctionData& data, cayley::Window w,
                                   double tol = completion::kDefaultTol, const Caps& caps = {});

/// extend_on_elements on ball(radius).
CompletedKernel extend_on_window(const PDFunctionData& data, int radius,
                                 double tol = completion::kDefaultTol, const Caps& caps = {});

/// Phi_F(x) = (1/|F|) sum_{y in F} K(y, y x), one matrix per target. Throws
/// WindowTooSmall listing missing y or yx.
std::vector<ComplexMatrix> folner_average(const CompletedKernel& k, const GroupSpec& spec,
                                          const cayley::FolnerSet& f,
                                          std::span<const GroupElement> targets);

/// The smallest window on which folner_average is defined: F T in canonical
/// order.
cayley::Window averaging_window(const GroupSpec& spec, const cayley::FolnerSet& f,
                                std::span<const GroupElement> targets, const Caps& caps = {});

struct ReportOptions {
  double tol = completion::kDefaultTol;
  std::uint64_t seed = 0;
  int tuple_count = 12;
  int tuple_size = 4;
  Caps caps;
};

struct ExtensionCell {
  int radius = 0;
  int folner_parameter = 0;
  std::size_t folner_size = 0;
  std::size_t window_size = 0;
  std::size_t dense_components = 0;
  std::optional<double> kernel_min_eigenvalue;
  std::vector<double> gram_min_eigenvalues;  // one per tuple
  double min_gram_eigenvalue = 0.0;
  double max_deviation_on_set = 0.0;  // max ||Phi_F(s) - phi(s)|| over s in S among the targets
  double max_asymmetry = 0.0;         // max ||Phi_F(x^-1) - Phi_F(x)*|| before symmetrising
  std::vector<std::pair<GroupElement, ComplexMatrix>> averaged;  // requested test elements
};

struct ExtensionReport {
  std::vector<int> radii;
  std::vector<int> folner_parameters;
  std::vector<GroupElement> test_set;
  std::uint64_t seed = 0;
  // per radius: smallest eigenvalue of the completed kernel on the ball
  std::vector<std::optional<double>> ball_kernel_min_eigenvalues;
  std::vector<std::vector<std::vector<GroupElement>>> tuples_by_radius;
  std::vector<ExtensionCell> cells;  // radius-major, then N
};

/// For every (radius, N): completes the kernel on the averaging window of
/// F = folner_set(N) and the targets (test set, S within the ball, and all
/// quotients g_i^-1 g_j of seeded random tuples from ball(radius)), averages,
/// and records positivity of the Gram matrices of Phi_F on the tuples.
ExtensionReport extension_report(const PDFunctionData& data, std::span<const int> radii,
                                 std::span<const int> folner_parameters,
                                 std::span<const GroupElement> test_set,
                                 const ReportOptions& options = {});

// ---------------------------------------------------------------------------
// Non-extendability certificates

struct ForcedChain {
  std::vector<GroupElement> tuple;  // g_0, g_1, g_2
  completion::MatrixBall ball;      // values allowed for phi(g_0^-1 g_2)
};

struct Z2Certificate {
  bool partially_positive = false;
  std::size_t window_size = 0;
  std::size_t clique_count = 0;
  ForcedChain via_second_axis;  // (0,0),(0,1),(1,1)
  ForcedChain via_first_axis;   // (0,0),(1,0),(1,1)
  ComplexMatrix forced_diagonal;  // the common point of both balls: Phi((1,1))
  double diagonal_error = 0.0;    // ||Phi((1,1)) - I||
  ForcedChain contradiction_chain;  // (0,0),(1,1),(2,1)
  ComplexMatrix forced_value;       // Phi((2,1))
  ComplexMatrix specified_value;    // phi((2,1))
  double contradiction = 0.0;       // |forced(2,1)-entry - specified(2,1)-entry|
  ForcedChain secondary_chain;      // (0,0),(1,1),(2,2)
  double secondary_contradiction = 0.0;
  bool confirms_non_extendable = false;
};

/// The data phi(0,0) = I, phi(1,0) = [[0,0],[1,0]], phi(0,1) = [[0,1],[0,0]],
/// zero elsewhere on Z^2 minus {+-(1,1)}.
PDFunctionData z2_counterexample_data();

Z2Certificate certify_z2_counterexample(double tol = completion::kDefaultTol);

struct CrossCertificate {
  ComplexMatrix u1;
  ComplexMatrix u2;
  int m = 2;
  int n = 2;
  double first_toeplitz_min_eigenvalue = 0.0;   // [U1^(j-i)]
  double second_toeplitz_min_eigenvalue = 0.0;  // [U2^(j-i)]
  bool toeplitz_psd = false;
  ForcedChain first_axis_chain;   // (0,0),(1,0),(1,1): forces U1 U2
  ForcedChain second_axis_chain;  // (0,0),(0,1),(1,1): forces U2 U1
  std::optional<ComplexMatrix> forced_first;
  std::optional<ComplexMatrix> forced_second;
  double forced_gap = 0.0;  // ||forced_first - forced_second||
  bool extendable = false;
};

/// Throws InvalidArgument unless u1, u2 are square, same size, unitary within 1e-9.
CrossCertificate certify_cross_counterexample(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                              int m = 2, int n = 2,
                                              double tol = completion::kDefaultTol);

// ---------------------------------------------------------------------------
// Trigonometric moments

struct Atom {
  double weight = 0.0;
  double frequency = 0.0;  // in [0, 2 pi)
};

/// c_k = sum_p w_p exp(i k alpha_p) for k = 0..m.
std::vector<Complex> atom_moments(std::span<const Atom> atoms, int m);

/// Positive atoms on the unit circle reproducing c_0..c_m. Throws NotPsd when
/// the Toeplitz matrix [c_(i-j)] is not PSD or c_0 <= 0; NumericalError
/// when no attempt places every root on the unit circle.
std::vector<Atom> caratheodory_fejer(std::span<const Complex> moments,
                                     double tol = completion::kDefaultTol);

/// Hermitian Toeplitz matrix T(i,j) = c_(i-j) with c_(-k) = conj(c_k).
ComplexMatrix toeplitz(std::span<const Complex> moments);

struct ScalarGrid {
  int k_max = 0;
  int l_max = 0;
  ComplexMatrix values;  // (2K+1) x (2L+1), entry (k+K, l+L) = c_kl
  Complex at(int k, int l) const { return values(k + k_max, l + l_max); }
};

/// c_kl = sum_{p,q} w_p v_q / c_0 exp(i(k alpha_p + l beta_q)) from the atoms
/// of the two marginal sequences.
ScalarGrid cross_scalar_extend(std::span<const Complex> h_moments,
                               std::span<const Complex> v_moments, int k_max, int l_max,
                               double tol = completion::kDefaultTol);

}  // namespace chordext::extend
