#ifndef FRAMELAB_FRAME_HPP
#define FRAMELAB_FRAME_HPP

#include <Eigen/Dense>
#include <vector>

#include "framelab/krein.hpp"

namespace framelab {

// Frame validity: lower optimal bound must exceed this fraction of the
// upper bound.
inline constexpr double kFrameRelTolerance = 1e-10;
// Relative tolerance for tightness and the unit-bound/unit-self-product
// flags.
inline constexpr double kTightTolerance = 1e-8;
// Relative reconstruction tolerance of the decomposition and duality
// identities on well-conditioned frames.
inline constexpr double kReconstructTolerance = 1e-8;
// Columns with norm below this fraction of the largest column norm count
// as zero when splitting into definite parts.
inline constexpr double kZeroColumnTolerance = 1e-12;

/// An ordered finite family of vectors, stored as columns of a synthesis
/// matrix, together with the ambient Krein space and the symmetry carried
/// by the m-dimensional coefficient space (identity unless stated).
class FrameFamily {
public:
  FrameFamily(KreinSpace space, Eigen::MatrixXd synthesis);
  FrameFamily(KreinSpace space, Eigen::MatrixXd synthesis,
              FundamentalSymmetry domain_symmetry);

  const KreinSpace& space() const { return space_; }
  const Eigen::MatrixXd& synthesis() const { return synthesis_; }
  const FundamentalSymmetry& domain_symmetry() const { return domain_symmetry_; }
  Eigen::Index dim() const { return space_.dim(); }
  Eigen::Index size() const { return synthesis_.cols(); }
  Eigen::VectorXd vector(Eigen::Index n) const { return synthesis_.col(n); }

private:
  KreinSpace space_;
  Eigen::MatrixXd synthesis_;
  FundamentalSymmetry domain_symmetry_;
};

struct BoundsPair {
  double lower = 0.0;
  double upper = 0.0;
};

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& m);

// Synthesis map: coefficients -> sum_n alpha_n k_n.
Eigen::VectorXd preframe_apply(const FrameFamily& family,
                               const Eigen::VectorXd& coefficients);

// Adjoint of the synthesis map between the two Krein spaces:
// k -> Jtilde * ([k_n, k])_n.
Eigen::VectorXd preframe_adjoint(const FrameFamily& family,
                                 const Eigen::VectorXd& k);

/// Computed bundle for one family: the frame operator S (for [.,.]), its
/// three companions for the transformed family/metric combinations, each
/// assembled from its own defining sum, the optimal bounds read off the
/// spectrum of S1, and the derived flags.
class FrameAnalysis {
public:
  explicit FrameAnalysis(FrameFamily family);

  const FrameFamily& family() const { return family_; }
  const Eigen::MatrixXd& frame_operator() const { return s_; }
  const Eigen::MatrixXd& companion_flipped() const { return s0_; }   // {Jk_n}, [.,.]
  const Eigen::MatrixXd& companion_definite() const { return s1_; }  // {k_n}, [.,.]_J
  const Eigen::MatrixXd& companion_mixed() const { return s2_; }     // {Jk_n}, [.,.]_J
  double lower_bound() const { return lower_; }
  double upper_bound() const { return upper_; }
  BoundsPair bounds() const { return {lower_, upper_}; }
  bool is_frame() const { return is_frame_; }
  bool is_tight() const { return is_tight_; }
  bool is_exact() const { return is_exact_; }
  bool is_vacuous() const { return family_.dim() == 0; }

  // S^{-1} x computed as J * S1^{-1} x through the symmetric
  // eigenfactorization of S1; throws NotAFrameError when singular.
  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& x) const;
  // S^{-1} applied to every family vector (the canonical dual synthesis).
  Eigen::MatrixXd inverse_family() const;

private:
  FrameFamily family_;
  Eigen::MatrixXd s_, s0_, s1_, s2_;
  Eigen::MatrixXd s1_basis_;      // eigenvectors of S1
  Eigen::VectorXd s1_spectrum_;   // ascending eigenvalues of S1
  double lower_ = 0.0, upper_ = 0.0;
  bool is_frame_ = false, is_tight_ = false, is_exact_ = false;
};

inline FrameAnalysis analyze_frame(FrameFamily family) {
  return FrameAnalysis{std::move(family)};
}

// Independent route to the optimal bounds: extreme squared singular values
// of the analysis map k -> ([k_n, k])_n.
BoundsPair optimal_bounds_oracle(const FrameFamily& family);

/// Optimal bounds of the four equivalent frame readings of one family:
/// {k_n} and {Jk_n}, each against [.,.] and [.,.]_J.
struct FourWayBounds {
  BoundsPair family_indefinite;
  BoundsPair flipped_indefinite;
  BoundsPair family_definite;
  BoundsPair flipped_definite;
  double max_relative_spread = 0.0;
};
FourWayBounds four_way_bounds(const FrameFamily& family);

/// Both reconstruction expansions of a vector through the canonical dual.
struct Decomposition {
  Eigen::VectorXd analysis_coefficients;  // [k_n, x]
  Eigen::VectorXd dual_coefficients;      // [S^{-1} k_n, x]
  Eigen::VectorXd reconstruction_via_dual;    // sum [k_n,x] S^{-1}k_n
  Eigen::VectorXd reconstruction_via_family;  // sum [S^{-1}k_n,x] k_n
  double residual = 0.0;  // max J-norm error of the two expansions
};
Decomposition frame_decompose(const FrameAnalysis& analysis,
                              const Eigen::VectorXd& x);

enum class DualVariant {
  canonical_krein,      // {S^{-1}k_n} dual of {k_n} for [.,.]
  canonical_krein_j,    // {JS^{-1}k_n} dual of {Jk_n} for [.,.]
  canonical_hilbert,    // {JS^{-1}k_n} dual of {k_n} for [.,.]_J
  canonical_hilbert_j,  // {S^{-1}k_n} dual of {Jk_n} for [.,.]_J
};

struct DualFrame {
  DualVariant variant;
  Eigen::MatrixXd vectors;
  BoundsPair bounds;  // measured; equals (1/B, 1/A) of the primal family
};
DualFrame dual_frame(const FrameAnalysis& analysis, DualVariant variant);

// True iff removing any single vector destroys the frame property
// (leave-one-out lower bound at most the frame threshold).
bool exactness_check(const FrameFamily& family);

struct TightnessReport {
  bool is_tight_one = false;        // |A-1|, |B-1| within tolerance
  bool self_products_unit = false;  // all | |[k_n,k_n]| - 1 | within tolerance
  bool is_jonb = false;             // pairwise [k_n,k_q] = 0 and m = dim
};
TightnessReport tight_jonb_check(const FrameFamily& family);

/// A family re-expressed in an orthonormal basis of an invariant subspace;
/// `basis` maps subspace coordinates back to the ambient space.
struct SubspaceFrame {
  FrameFamily family;
  Eigen::MatrixXd basis;
};
struct SplitResult {
  SubspaceFrame inside;      // {P k_n} on ran P
  SubspaceFrame complement;  // {(1-P) k_n} on ran(1-P)
};
// Requires P to be an orthogonal projection commuting with J.
SplitResult split_frame(const FrameFamily& family,
                        const Eigen::MatrixXd& projection);

// Direct sum of two subspace families: block-diagonal symmetry and
// synthesis. The merged bounds lie within the union of the parts' bounds.
// When expected_dim is nonnegative, the parts must add up to it.
FrameFamily merge_frames(const FrameFamily& part_a, const FrameFamily& part_b,
                         Eigen::Index expected_dim = -1);

/// {P+ k_n} u {P- k_n} with near-zero columns dropped, plus definiteness
/// diagnostics of the two ranges.
struct JFrameSplit {
  FrameFamily family;
  Eigen::Index positive_count = 0;  // kept columns in the positive group
  Eigen::Index negative_count = 0;
  bool positive_uniformly_definite = false;
  bool negative_uniformly_definite = false;
  Eigen::Index positive_rank = 0;
  Eigen::Index negative_rank = 0;
  bool is_jframe = false;  // definite parts of full signature rank
};
JFrameSplit jframe_split(const FrameFamily& family);

}  // namespace framelab

#endif  // FRAMELAB_FRAME_HPP
